#pragma once

#include "olab/io.hpp"
#include "olab/linalg.hpp"
#include "olab/origami.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace olab {

struct EkzReport {
    Stratum stratum;
    Rational combinatorial; // (1/12) Σ k(k+2)/(k+1)
    Rational cylinder;      // orbit average of Σ 1/len over h-cycles
    Rational total;
    int orbit_size = 0;
};

Rational ekz_combinatorial(const Stratum& s);
/// Throws DomainError for non-reduced input.
EkzReport ekz_sum(const Origami& o, int threads = 1);
/// (total − known) / multiplicity: the common value of `multiplicity`
/// exponents once the others are known.
Rational remaining_exponent(const Rational& total, const Rational& known, int multiplicity);

json to_json(const EkzReport& r);

enum class Subspace { Full, H1Zero, W };
std::string to_string(Subspace s);
/// "full", "h1_zero" or "w"; throws ParseError otherwise.
Subspace parse_subspace(std::string_view text);

struct McEstimate {
    std::vector<double> exponents;  // descending
    std::vector<double> std_errors; // same order
    int steps = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    Subspace subspace = Subspace::Full;
    std::string note; // automorphism ambiguity, if any
};

/// Uniform random walk over T, S, t, s on the orbit graph with QR
/// re-orthonormalization every 20 steps. Bit-for-bit reproducible given
/// (seed, steps, trials), independent of `threads`. Subspace W needs a unique
/// central involution in the automorphism group.
McEstimate mc_exponents(const Origami& o, Subspace subspace, int steps, int trials,
                        std::uint64_t seed, int threads = 1);

/// |e_i + e_{d+1−i}| ≤ sigmas·√(σ_i² + σ_{d+1−i}²) + floor for every i.
bool is_symmetric(const McEstimate& e, double sigmas = 3.0, double floor = 1e-9);

/// The unique non-identity central automorphism of order 2; throws
/// DomainError when there is none or more than one.
Permutation central_involution(const Origami& o);

json to_json(const McEstimate& e);

} // namespace olab

#pragma once

#include "olab/linalg.hpp"

#include <optional>
#include <vector>

namespace olab {

/// x⁴ + a x³ + b x² + a x + 1
struct ReciprocalQuartic {
    Integer a, b;
    Integer delta1; // a² − 4b + 8
    Integer delta2; // (b + 2 − 2a)(b + 2 + 2a)
    Integer delta3; // delta1 · delta2
    Integer t;      // −a − 4
    Integer d;      // b + 2 + 2a

    static ReciprocalQuartic from_ab(const Integer& a, const Integer& b);
    IntVector coefficients() const; // constant term first
    bool consistent() const;
};

/// Coefficients constant term first. Throws DomainError unless monic,
/// palindromic and of degree 4.
ReciprocalQuartic quartic_from_charpoly(const IntVector& coeffs);

bool is_perfect_square(const Integer& n);

/// Number of distinct real roots by a Sturm sequence over Q.
int distinct_real_roots(const std::vector<Rational>& coeffs);
bool has_real_simple_roots(const ReciprocalQuartic& q);
/// a² − 4b + 8 > 0, −a − 4 > 0, b + 2 + 2a > 0.
bool positive_root_criterion(const ReciprocalQuartic& q);

bool is_irreducible(const ReciprocalQuartic& q);
/// Decided by the discriminant tests alone, when they suffice.
std::optional<bool> irreducible_fast_path(const ReciprocalQuartic& q);

struct PinchingReport {
    bool pinching = false;
    std::optional<ReciprocalQuartic> quartic;
    IntVector charpoly;
    bool irreducible = false;
    bool real_simple_roots = false;
    bool squares_excluded = false; // delta1, delta2, delta3 all non-squares
};

/// `form` is the symplectic form the matrix preserves; the standard
/// (0 I; −I 0) when omitted. Throws DomainError for non-symplectic input or
/// sizes other than 4.
PinchingReport is_galois_pinching_sp4(const IntMatrix& m,
                                      const std::optional<IntMatrix>& form = std::nullopt);
/// Throws DomainError unless m is 2x2 with det 1.
bool is_galois_pinching_sl2(const IntMatrix& m);
/// Dispatches on size; other sizes throw DomainError.
bool is_galois_pinching(const IntMatrix& m, const std::optional<IntMatrix>& form = std::nullopt);

} // namespace olab

#pragma once

#include "olab/homology.hpp"
#include "olab/origami.hpp"

#include <optional>
#include <string>
#include <vector>

namespace olab {

enum class Step : char { R = 'R', L = 'L', U = 'U', D = 'D' };

struct CenterPath {
    int start = 0; // 0-based square
    std::vector<Step> steps;

    static CenterPath parse(int start, std::string_view steps);
    std::string to_string() const;
};

/// Square visited after each step; the last entry equals the start for
/// closed paths.
std::vector<int> visited_squares(const Origami& o, const CenterPath& p);
bool is_closed(const Origami& o, const CenterPath& p);
/// Removes backtracking pairs, cyclically; may move the start.
CenterPath cyclically_reduced(const Origami& o, const CenterPath& p);
/// R from s gives σ_s, U from s gives ζ_s, L and D the negatives of the
/// edges they traverse backwards.
Chain path_chain(const Origami& o, const CenterPath& p);

/// (left turns − right turns) / 4, including the wrap-around turn.
int winding_index(const Origami& o, const CenterPath& p);
/// Transverse self-intersections of the path drawn as chords in each square.
int self_intersections(const Origami& o, const CenterPath& p);
/// ind + 1 + self_intersections, mod 2.
int phi_of_path(const Origami& o, const CenterPath& p);

struct QuadraticFormData {
    std::vector<IntVector> basis;                   // H₁ coordinates
    std::vector<int> phi;                           // values in {0,1}
    std::vector<std::vector<int>> intersection_mod2; // pairing of basis elements
};

/// Arf invariant by symplectic orthogonalization. Throws DomainError when
/// the form is degenerate.
int arf_from_data(const QuadraticFormData& q);

/// φ on a mod-2 basis of H₁ built from centre paths.
QuadraticFormData quadratic_form(const Origami& o);
QuadraticFormData quadratic_form(const Origami& o, const HomologyBasis& b);

/// Throws DomainError when some zero has odd order.
int spin_parity(const Origami& o);

/// ρ with ρhρ⁻¹ = h⁻¹, ρvρ⁻¹ = v⁻¹, ρ² = id and 2g+2 fixed points on the
/// surface, if any.
struct InvolutionSearch {
    bool found = false;
    std::optional<Permutation> rho;
    int fixed_points = 0;
    int fixed_zeros = 0; // singular vertices fixed by rho
    int candidates = 0;  // rotations by π found, any fixed-point count
};
InvolutionSearch hyperelliptic_involution(const Origami& o);

enum class ComponentTag {
    Connected,
    Hyperelliptic,
    EvenSpin,
    OddSpin,
    NonHyperelliptic,
    HyperellipticOrSpinUndecided,
};
std::string to_string(ComponentTag t);

struct ComponentReport {
    ComponentTag tag = ComponentTag::Connected;
    Stratum stratum;
    std::optional<int> parity;
    std::optional<bool> hyperelliptic; // involution search result, when run
    std::string note;                  // disagreement between methods
};
ComponentReport component(const Origami& o);

} // namespace olab

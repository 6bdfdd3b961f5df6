#pragma once

#include "olab/linalg.hpp"
#include "olab/orbit.hpp"
#include "olab/origami.hpp"
#include "olab/sl2z.hpp"

#include <vector>

namespace olab {

/// 1-chain on the square complex: entries 0..N-1 are the bottom edges σ_i,
/// entries N..2N-1 the left edges ζ_i.
using Chain = IntVector;

struct ChainComplexData {
    int degree = 0;
    VertexClasses vertices;
    IntMatrix boundary2; // 2N x N, square i -> σ_i + ζ_h(i) - σ_v(i) - ζ_i
    IntMatrix boundary1; // V x 2N
};
ChainComplexData chain_complex(const Origami& o);

bool is_cycle(const ChainComplexData& cc, const Chain& c);

/// Closed path through square centres read as a chain: a right step from s
/// contributes σ_s, an up step ζ_s. Pairs such a chain with an arbitrary
/// cycle by counting signed crossings.
Integer dual_pairing(const Origami& o, const Chain& dual, const Chain& primal);

class HomologyBasis {
  public:
    HomologyBasis() = default;
    explicit HomologyBasis(const Origami& o);

    int rank() const { return static_cast<int>(cycles_.size()); }
    int degree() const { return degree_; }
    /// Basis cycles as chains (each also a closed centre path chain).
    const std::vector<Chain>& cycles() const { return cycles_; }
    const IntMatrix& intersection() const { return J_; }
    const ChainComplexData& complex() const { return cc_; }

    /// Coordinates of a cycle; throws DomainError for non-cycles.
    IntVector coordinates(const Chain& c) const;
    Chain chain_of(const IntVector& coords) const;
    Integer pairing(const IntVector& x, const IntVector& y) const;

    const IntVector& sigma_sum() const { return sigma_sum_; } // Σσ_i
    const IntVector& zeta_sum() const { return zeta_sum_; }   // Σζ_i
    /// Holonomy (x, y) of a class given in coordinates.
    std::pair<Integer, Integer> holonomy(const IntVector& coords) const;

  private:
    int degree_ = 0;
    Origami origami_;
    ChainComplexData cc_;
    std::vector<Chain> cycles_;
    IntMatrix J_, J_inv_;
    IntVector sigma_sum_, zeta_sum_;
};

HomologyBasis h1_basis(const Origami& o);

/// Intersection number of two cycles; throws DomainError for non-cycles.
Integer intersection_pairing(const Origami& o, const Chain& x, const Chain& y);

struct TautologicalSplit {
    IntMatrix st;   // columns: Σσ, Σζ
    IntMatrix zero; // columns: saturated basis of the zero-holonomy lattice
};
TautologicalSplit tautological_split(const Origami& o);
TautologicalSplit tautological_split(const HomologyBasis& b);

/// Image of every edge under the chain map of `l`, in the edge basis of
/// apply_letter_raw(o, l).
std::vector<Chain> letter_chain_map(const Origami& o, Letter l);

struct CocycleMatrix {
    IntMatrix matrix;
    int source = 0;
    int target = 0;
    Sl2zWord word;
    std::vector<IntMatrix> ambiguity; // Aut action on the source, identity excluded
};

/// Step of `l` from `o` to the canonical form of its image, in h1_basis
/// coordinates of `o` and of that canonical form.
CocycleMatrix step_matrix(const Origami& o, Letter l);

/// Action on H₁ of a deck transformation, in `b`'s coordinates.
IntMatrix automorphism_matrix(const HomologyBasis& b, const Permutation& tau);

/// The orbit of an origami with homology bases and step matrices for every
/// node; read-only after construction.
class KzCocycle {
  public:
    explicit KzCocycle(const Origami& o, int threads = 1);

    const OrbitGraph& graph() const { return graph_; }
    int basepoint() const { return graph_.basepoint; }
    const HomologyBasis& basis(int node) const { return bases_[static_cast<std::size_t>(node)]; }
    const IntMatrix& step(int node, Letter l) const {
        return steps_[static_cast<std::size_t>(node)][static_cast<std::size_t>(index(l))];
    }
    /// Product of step matrices along the word starting at `node`
    /// (rightmost letter first). `end` receives the final node.
    IntMatrix word_matrix(int node, const Sl2zWord& w, int* end = nullptr) const;
    /// Word must be a loop at the basepoint; throws DomainError otherwise.
    CocycleMatrix kz_matrix(const Sl2zWord& w) const;
    std::vector<IntMatrix> automorphism_matrices(int node) const;

  private:
    OrbitGraph graph_;
    std::vector<HomologyBasis> bases_;
    std::vector<std::array<IntMatrix, 4>> steps_;
};

/// kz_matrix in h1_basis coordinates of canonical_form(o).
CocycleMatrix kz_matrix(const Origami& o, const Sl2zWord& w);

/// Checks Mᵀ J_target M == J_source.
bool is_symplectic(const IntMatrix& m, const IntMatrix& j_source, const IntMatrix& j_target);

/// Matrix R with m · sub_source == sub_target · R; throws DomainError when the
/// subspace is not mapped onto the target lattice.
IntMatrix restrict(const IntMatrix& m, const IntMatrix& sub_source, const IntMatrix& sub_target);
IntMatrix restrict(const IntMatrix& m, const IntMatrix& sub);
IntMatrix restrict(const CocycleMatrix& m, const IntMatrix& sub);
/// subᵀ J sub
IntMatrix restricted_form(const IntMatrix& j, const IntMatrix& sub);

/// Saturated basis of ker(ρ(τ) + Id). Throws DomainError unless τ is an
/// automorphism with τ² = id.
IntMatrix isotypical_W(const Origami& o, const Permutation& tau);
IntMatrix isotypical_W(const HomologyBasis& b, const Origami& o, const Permutation& tau);

/// Σ (-1)^(k+1) (m - Id)^k / k. Throws DomainError if m - Id is not nilpotent.
RatMatrix unipotent_log(const RatMatrix& m);
RatMatrix matrix_exp_nilpotent(const RatMatrix& x);
/// Dimension of the Lie algebra generated under the commutator bracket.
int lie_algebra_dim(const std::vector<RatMatrix>& gens);

} // namespace olab

#pragma once

#include "olab/origami.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace olab {

class FiniteGroupTable {
  public:
    /// Validates closure, identity, inverses and associativity (all triples).
    FiniteGroupTable(std::vector<std::vector<int>> table, std::vector<std::string> names);

    int order() const { return static_cast<int>(table_.size()); }
    int mul(int x, int y) const {
        return table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    }
    int identity() const { return identity_; }
    int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }
    const std::string& name(int x) const { return names_[static_cast<std::size_t>(x)]; }
    /// Index of a named element; throws DomainError if unknown.
    int find(std::string_view name) const;

  private:
    std::vector<std::vector<int>> table_;
    std::vector<std::string> names_;
    std::vector<int> inverse_;
    int identity_ = 0;
};

/// Elements 1, −1, i, −i, j, −j, k, −k in that index order; ij = k.
FiniteGroupTable quaternion_group();
FiniteGroupTable cyclic_group(int n); // elements "0".."n-1"
FiniteGroupTable trivial_group();

struct EdgeCocycle {
    FiniteGroupTable group;
    std::vector<int> wh; // per 0-based square
    std::vector<int> wv;
};

/// Square (s, g) gets index g·N + s; h̃(s, g) = (h s, g·wh(s)),
/// ṽ(s, g) = (v s, g·wv(s)). Throws DomainError when disconnected.
Origami group_cover(const Origami& o, const EdgeCocycle& c);

/// a on the step of each h-cycle that lands on the cycle's smallest square,
/// b likewise for v-cycles, identity elsewhere.
EdgeCocycle wrap_cocycle(const Origami& o, const FiniteGroupTable& group, int a, int b);

/// Deck transformation (s, g) ↦ (s, g₀·g) of a group_cover.
Permutation deck_transformation(const Origami& base, const FiniteGroupTable& group, int g0);

/// Unit torus, quaternions, wh ≡ i, wv ≡ j.
Origami eierlegende_wollmilchsau();
/// Quaternionic cover of L3 by the wrap cocycle (i, j).
Origami quaternionic_l3();

struct QuotientReport {
    Origami quotient;
    int genus = 1;
    Stratum stratum;
};
/// Quotient by the cyclic group generated by `central`. Throws DomainError
/// unless it is an automorphism.
QuotientReport quotient_dims_check(const Origami& o, const Permutation& central);

/// Cone angles over each base vertex add up to |G| times the base angle and
/// χ(cover) = |G|·χ(base) − Σ_v (|G| − #preimages of v).
bool riemann_hurwitz_consistent(const Origami& base, const Origami& cover, int group_order);

/// read_origami for corpus files; the label is the file stem.
Origami ingest_corpus(const std::filesystem::path& path);

} // namespace olab

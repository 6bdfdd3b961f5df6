#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olab {

/// A bijection of {1..N}.
///
/// Storage is 0-based; every textual or JSON surface is 1-based.
///
/// Composition convention (used by every formula in this library, in
/// particular the SL(2,Z) action on origamis):
///
///     compose(p, q)(i) == p(q(i))       i.e. q is applied first.
///
/// So compose((1,2,3), (1,2)) == (1,3).
class Permutation {
  public:
    Permutation() = default;
    explicit Permutation(std::vector<int> zero_based);

    static Permutation identity(int degree);
    static Permutation from_images(const std::vector<int>& one_based);

    int degree() const { return static_cast<int>(map_.size()); }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
    std::span<const int> zero_based() const { return map_; }
    std::vector<int> images() const;

    bool is_identity() const;

    // Cycles in 0-based symbols; each starts at its smallest element and the
    // list is sorted by that element. Fixed points are included.
    std::vector<std::vector<int>> cycles() const;

    friend auto operator<=>(const Permutation&, const Permutation&) = default;

  private:
    std::vector<int> map_;
};

/// Parses "(1)(2,3)(4,5,6)". Whitespace is ignored. The degree is the larger of
/// the largest symbol and `degree_hint`; unmentioned symbols are fixed.
Permutation parse_cycles(std::string_view text,
                         std::optional<int> degree_hint = std::nullopt);

/// Canonical rendering with fixed points, so parse_cycles(render_cycles(p)) == p.
std::string render_cycles(const Permutation& p);

Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// r ∘ p ∘ r⁻¹
Permutation conjugate(const Permutation& p, const Permutation& r);
/// Cycle lengths, ascending.
std::vector<int> cycle_type(const Permutation& p);
bool is_transitive(std::span<const Permutation> generators);

inline Permutation operator*(const Permutation& p, const Permutation& q) {
    return compose(p, q);
}

} // namespace olab

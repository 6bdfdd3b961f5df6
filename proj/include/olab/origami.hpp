#pragma once

#include "olab/perm.hpp"

#include <string>
#include <vector>

namespace olab {

/// Square-tiled surface: h(i) is the square to the right of i, v(i) the one
/// on top.
class Origami {
  public:
    Origami() = default;
    /// Throws DomainError on degree mismatch, degree 0 or a disconnected pair.
    Origami(Permutation h, Permutation v, std::string label = {});

    int degree() const { return h_.degree(); }
    const Permutation& h() const { return h_; }
    const Permutation& v() const { return v_; }
    const Permutation& h_inv() const { return h_inv_; }
    const Permutation& v_inv() const { return v_inv_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    friend bool operator==(const Origami& a, const Origami& b) {
        return a.h_ == b.h_ && a.v_ == b.v_;
    }

  private:
    Permutation h_, v_, h_inv_, v_inv_;
    std::string label_;
};

struct Stratum {
    std::vector<int> orders; // descending
    int genus = 1;

    std::string to_string() const; // "H(5,5,5,5)", torus "H(0)"
    friend bool operator==(const Stratum&, const Stratum&) = default;
};

/// c = v⁻¹ ∘ h⁻¹ ∘ v ∘ h. Cycles are in bijection with vertices.
Permutation corner_permutation(const Origami& o);

/// Vertex class of the bottom-left corner of every square.
struct VertexClasses {
    std::vector<int> of_square; // 0-based vertex id of BL(s)
    std::vector<int> angle;     // cone angle / 2π per vertex
    int count() const { return static_cast<int>(angle.size()); }
};
VertexClasses bottom_left_vertices(const Origami& o);

/// Zero orders, descending.
std::vector<int> singularities(const Origami& o);
int genus(const Origami& o);
Stratum stratum(const Origami& o);

/// True iff the lattice of relative periods is all of Z².
bool is_reduced(const Origami& o);

/// Deck transformations; identity first.
std::vector<Permutation> automorphisms(const Origami& o);

struct CanonicalForm {
    Origami origami;
    Permutation relabel; // old square -> new square
};
CanonicalForm canonical_form(const Origami& o);

/// (r h r⁻¹, r v r⁻¹)
Origami relabeled(const Origami& o, const Permutation& r);

} // namespace olab

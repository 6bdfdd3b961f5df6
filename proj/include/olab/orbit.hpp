#pragma once

#include "olab/io.hpp"
#include "olab/origami.hpp"
#include "olab/sl2z.hpp"

#include <array>
#include <vector>

namespace olab {

struct SlStep {
    Origami raw;
    Origami canonical;
    Permutation relabel; // raw square -> canonical square
};

SlStep apply_T(const Origami& o);     // (h, v h⁻¹)
SlStep apply_S(const Origami& o);     // (h v⁻¹, v)
SlStep apply_T_inv(const Origami& o); // (h, v h)
SlStep apply_S_inv(const Origami& o); // (h v, v)
SlStep apply_letter(const Origami& o, Letter l);
Origami apply_letter_raw(const Origami& o, Letter l);

struct OrbitEdge {
    int target = -1;
    Permutation relabel;
};

struct OrbitGraph {
    std::vector<Origami> nodes;                 // canonical forms
    std::vector<std::array<OrbitEdge, 4>> edges; // indexed by Letter
    int basepoint = 0;
    Permutation base_relabel; // input origami -> nodes[basepoint]

    int size() const { return static_cast<int>(nodes.size()); }
    int step(int node, Letter l) const {
        return edges[static_cast<std::size_t>(node)][static_cast<std::size_t>(index(l))].target;
    }
    /// Node reached from `node` by the word (rightmost letter first).
    int trace(int node, const Sl2zWord& w) const;
    /// Words (tree paths) taking the basepoint to every node.
    std::vector<Sl2zWord> tree_words() const;
};

/// BFS closure with discovery priority T, S, T⁻¹, S⁻¹. `threads` > 1 expands
/// each frontier in parallel; the node order does not depend on it.
OrbitGraph sl2z_orbit(const Origami& o, int threads = 1);

/// Orbit size. Throws DomainError for non-reduced input.
int veech_index(const Origami& o);
std::vector<Sl2zWord> veech_generators(const Origami& o);
std::vector<Sl2zWord> veech_generators(const OrbitGraph& g);

json to_json(const OrbitGraph& g);

} // namespace olab

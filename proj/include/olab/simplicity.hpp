#pragma once

#include "olab/galois.hpp"
#include "olab/homology.hpp"
#include "olab/io.hpp"
#include "olab/origami.hpp"
#include "olab/sl2z.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace olab {

/// Σσ_i over each cycle of h, in h1_basis coordinates.
std::vector<IntVector> horizontal_cylinder_classes(const Origami& o);
/// Rank of the horizontal cylinder classes of the origami reached by `direction`.
int cylinder_span_dim(const Origami& o, const Sl2zWord& direction);

enum class Direction { Horizontal, Vertical };
/// T^K (resp. S^K) for the smallest K ≥ 1 fixing canonical_form(o).
Sl2zWord parabolic_word(const Origami& o, Direction d);

struct UnipotentWitness {
    Sl2zWord word;
    int rank = 0; // rank of (B − Id) on H1_zero
    bool isotropic = false;
};

struct CylinderWitness {
    Sl2zWord direction;
    int dim = 0; // dim E
    int genus = 0;
};

struct SimplicityCertificate {
    Origami origami;
    Sl2zWord pinching_word;
    IntMatrix pinching_matrix; // restriction to H1_zero
    ReciprocalQuartic quartic;
    std::variant<CylinderWitness, UnipotentWitness> witness;
};

struct SimplicitySearch {
    std::optional<SimplicityCertificate> certificate;
    int explored_depth = 0;
    std::uint64_t loops_checked = 0;
};

/// Searches loops at the basepoint by length, then lexicographically over
/// T, S, t, s. Throws DomainError unless o has genus 3, trivial automorphisms
/// and is reduced.
SimplicitySearch certify_simplicity(const Origami& o, int search_depth, int threads = 1);

/// Certificate for a given loop word; nullopt when its H1_zero restriction is
/// not Galois-pinching or no witness exists. Same preconditions as above.
std::optional<SimplicityCertificate> certify_with_word(const Origami& o, const Sl2zWord& word);
/// Recomputes every claim from the origami; never throws.
bool verify_certificate(const SimplicityCertificate& cert);

json to_json(const SimplicityCertificate& cert);
/// Throws ParseError on malformed input.
SimplicityCertificate certificate_from_json(const json& j);

} // namespace olab

#include "olab/error.hpp"
#include "olab/orbit.hpp"
#include "olab/spin.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace olab;
using namespace olab::testing;

namespace {

QuadraticFormData standard_data(const std::vector<int>& phi) {
    const std::size_t n = phi.size();
    QuadraticFormData q;
    q.phi = phi;
    q.intersection_mod2.assign(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        q.intersection_mod2[i][i + 1] = 1;
        q.intersection_mod2[i + 1][i] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = 1;
        q.basis.push_back(e);
    }
    return q;
}

// Replaces basis element i by e_i + e_j, keeping φ and the pairing consistent.
void add_basis_vector(QuadraticFormData& q, std::size_t i, std::size_t j) {
    auto& m = q.intersection_mod2;
    q.phi[i] = (q.phi[i] + q.phi[j] + m[i][j]) % 2;
    for (std::size_t k = 0; k < m.size(); ++k)
        if (k != i) {
            m[i][k] = (m[i][k] + m[j][k]) % 2;
            m[k][i] = m[i][k];
        }
    for (std::size_t k = 0; k < q.basis[i].size(); ++k)
        q.basis[i][k] += q.basis[j][k];
}

bool even_orders(const Origami& o) {
    for (int k : singularities(o))
        if (k % 2)
            return false;
    return true;
}

} // namespace

TEST_CASE("winding index") {
    const Origami torus = fixture("torus");
    CHECK(winding_index(torus, CenterPath::parse(0, "R")) == 0);
    CHECK(winding_index(torus, CenterPath::parse(0, "RULD")) == 1);
    CHECK(winding_index(torus, CenterPath::parse(0, "RDLU")) == -1);
    const Origami two(parse_cycles("(1,2)"), parse_cycles("", 2));
    CHECK_THROWS_AS(winding_index(two, CenterPath::parse(0, "R")), DomainError);
}

TEST_CASE("phi of centre paths") {
    const Origami torus = fixture("torus");
    CHECK(phi_of_path(torus, CenterPath::parse(0, "R")) == 1);
    CHECK(phi_of_path(torus, CenterPath::parse(0, "U")) == 1);
    CHECK(phi_of_path(torus, CenterPath::parse(0, "RULD")) == 0);
    CHECK(phi_of_path(torus, CenterPath::parse(0, "RDLU")) == 0);
    // a doubled core loop on the 2-square torus: one crossing
    const Origami two(parse_cycles("(1,2)"), parse_cycles("", 2));
    const CenterPath eight = CenterPath::parse(0, "RRRR");
    CHECK(winding_index(two, eight) == 0);
    CHECK(self_intersections(two, eight) == 1);
    CHECK(phi_of_path(two, eight) == 0);
}

TEST_CASE("backtracking is removed") {
    const Origami l3 = fixture("l3");
    const CenterPath p = cyclically_reduced(l3, CenterPath::parse(0, "RUDLRR"));
    CHECK(p.steps.size() == 2);
    CHECK(phi_of_path(l3, p) == phi_of_path(l3, CenterPath::parse(0, "RR")));
}

TEST_CASE("phi is a function of the homology class") {
    // a detour around a regular vertex bounds a disc
    for (const char* name : {"mstar", "mstarstar", "mbarstar", "mbarstar_d3"}) {
        const Origami o = fixture(name);
        const HomologyBasis b(o);
        int tried = 0;
        for (int s = 0; s < o.degree(); ++s) {
            for (const auto& [loop, detour] : {std::pair{'R', "RULD"}, std::pair{'U', "URDL"}}) {
                if (!is_closed(o, CenterPath::parse(s, detour)))
                    continue;
                std::string steps;
                int x = s;
                do {
                    steps += loop;
                    x = loop == 'R' ? o.h()(x) : o.v()(x);
                } while (x != s);
                const CenterPath plain = CenterPath::parse(s, steps);
                const CenterPath longer = CenterPath::parse(s, detour + steps);
                CHECK(b.coordinates(path_chain(o, plain)) == b.coordinates(path_chain(o, longer)));
                CHECK(phi_of_path(o, plain) == phi_of_path(o, longer));
                ++tried;
            }
        }
        CHECK(tried > 0);
    }
}

TEST_CASE("Arf invariant") {
    CHECK(arf_from_data(standard_data({0, 0, 0, 0})) == 0);
    CHECK(arf_from_data(standard_data({1, 1})) == 1);
    CHECK(arf_from_data(standard_data({1, 1, 1, 1})) == 0);
    CHECK(arf_from_data(standard_data({1, 0, 1, 1})) == 1);
    QuadraticFormData degenerate = standard_data({0, 0});
    degenerate.intersection_mod2[0][1] = degenerate.intersection_mod2[1][0] = 0;
    CHECK_THROWS_AS(arf_from_data(degenerate), DomainError);
}

TEST_CASE("Arf invariant is independent of the basis") {
    std::mt19937_64 rng(67);
    const QuadraticFormData mstar = quadratic_form(fixture("mstar"));
    CHECK(arf_from_data(mstar) == 1);
    for (int trial = 0; trial < 200; ++trial) {
        QuadraticFormData q = mstar;
        const std::size_t n = q.phi.size();
        for (int k = 0; k < 30; ++k) {
            const std::size_t i = rng() % n, j = rng() % n;
            if (i != j)
                add_basis_vector(q, i, j);
        }
        CHECK(arf_from_data(q) == 1);
    }
}

TEST_CASE("spin parities") {
    CHECK(spin_parity(fixture("mstar")) == 1);
    CHECK(spin_parity(fixture("mstarstar")) == 0);
    CHECK(spin_parity(fixture("mbarstar")) == 1);
    CHECK(spin_parity(fixture("mbarstar_d3")) == 1);
    CHECK(spin_parity(fixture("mbarstar_d5")) == 1);
    CHECK(spin_parity(fixture("mbarstar_d7")) == 1);
    CHECK(spin_parity(fixture("torus")) == 1);
    CHECK_THROWS_AS(spin_parity(fixture("ew")), DomainError);
    CHECK_THROWS_AS(spin_parity(fixture("ltilde")), DomainError);
}

TEST_CASE("components") {
    CHECK(component(fixture("mstar")).tag == ComponentTag::OddSpin);
    CHECK(component(fixture("mstarstar")).tag == ComponentTag::Hyperelliptic);
    CHECK(component(fixture("l3")).tag == ComponentTag::Connected);
    const InvolutionSearch s = hyperelliptic_involution(fixture("mstarstar"));
    CHECK(s.found);
    CHECK(s.fixed_points == 8);
    CHECK_FALSE(hyperelliptic_involution(fixture("mstar")).found);
    CHECK(component(fixture("dema")).note.empty());
}

TEST_CASE("spin parity is constant on orbits and under relabeling") {
    for (const char* name : {"torus", "l3", "mstar", "mstarstar", "mbarstar", "dema"}) {
        const Origami o = fixture(name);
        const int p = spin_parity(o);
        for (const auto& n : sl2z_orbit(o).nodes)
            CHECK_MESSAGE(spin_parity(n) == p, name);
    }
    // the M̄*(d) orbits are too large to enumerate; sample them by random walks
    std::mt19937_64 rng(71);
    for (const char* name : {"mbarstar_d3", "mbarstar_d5", "mbarstar_d7"}) {
        Origami x = fixture(name);
        for (int k = 0; k < 60; ++k) {
            x = apply_letter_raw(x, kLetters[rng() % 4]);
            CHECK_MESSAGE(spin_parity(x) == 1, name);
        }
    }
    for (int trial = 0; trial < 300; ++trial) {
        const Origami o = random_origami(rng, 9);
        if (!even_orders(o))
            continue;
        const Origami r = relabeled(o, random_permutation(rng, o.degree()));
        CHECK(spin_parity(o) == spin_parity(r));
    }
}

#include "olab/error.hpp"
#include "olab/orbit.hpp"
#include "olab/spin.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace olab;
using namespace olab::testing;

namespace {

// Orbit by raw T and S moves, deduplicated by explicit isomorphism search.
std::size_t orbit_size_oracle(const Origami& o) {
    std::vector<Origami> seen{o};
    for (std::size_t i = 0; i < seen.size(); ++i)
        for (Letter l : {Letter::T, Letter::S}) {
            const Origami next = apply_letter_raw(seen[i], l);
            const bool known = std::any_of(seen.begin(), seen.end(), [&](const Origami& x) {
                return isomorphic_oracle(x, next);
            });
            if (!known)
                seen.push_back(next);
        }
    return seen.size();
}

bool contains(const OrbitGraph& g, const Origami& o) {
    const Origami c = canonical_form(o).origami;
    return std::find(g.nodes.begin(), g.nodes.end(), c) != g.nodes.end();
}

} // namespace

TEST_CASE("T and S moves") {
    const Origami torus = fixture("torus");
    CHECK(apply_T(torus).canonical == torus);
    CHECK(apply_S(torus).canonical == torus);
    const Origami l3 = fixture("l3");
    CHECK(apply_T(l3).raw == Origami(l3.h(), compose(l3.v(), l3.h_inv())));
    CHECK(apply_S(l3).raw == Origami(compose(l3.h(), l3.v_inv()), l3.v()));
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const Origami o = random_origami(rng, 9);
        CHECK(apply_S(apply_S_inv(o).raw).raw == o);
        CHECK(apply_T(apply_T_inv(o).raw).raw == o);
        const SlStep s = apply_S(o);
        CHECK(relabeled(s.raw, s.relabel) == s.canonical);
    }
}

TEST_CASE("orbit sizes") {
    CHECK(sl2z_orbit(fixture("torus")).size() == 1);
    CHECK(sl2z_orbit(fixture("dema")).size() == 3);
    CHECK(sl2z_orbit(fixture("ltilde")).size() == 12);
    CHECK(veech_index(fixture("dema")) == 3);
    CHECK(veech_index(fixture("ltilde")) == 12);
    CHECK(veech_index(fixture("torus")) == 1);
    CHECK_THROWS_AS(veech_index(Origami(parse_cycles("(1,2)(3,4)"), parse_cycles("(1,3)(2,4)"))),
                    DomainError);
    for (const char* name : {"l3", "mstar", "mstarstar", "mbarstar", "dema", "ew"}) {
        const Origami o = fixture(name);
        CHECK_MESSAGE(static_cast<std::size_t>(sl2z_orbit(o).size()) == orbit_size_oracle(o), name);
    }
}

TEST_CASE("the S-closure of DeMa stays in its orbit") {
    const OrbitGraph g = sl2z_orbit(fixture("dema"));
    Origami x = fixture("dema");
    for (int k = 0; k < 10; ++k) {
        x = apply_S(x).canonical;
        CHECK(contains(g, x));
    }
}

TEST_CASE("Mbar* lies in the orbit of M*") {
    const Origami mstar = fixture("mstar");
    const OrbitGraph g = sl2z_orbit(mstar);
    CHECK(contains(g, fixture("mbarstar")));
    // J·T² with J = T·S⁻¹·T
    Origami x = mstar;
    const Sl2zWord w = Sl2zWord::parse("TsT") * Sl2zWord::parse("TT");
    CHECK(w == Sl2zWord::parse("TsTTT"));
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it)
        x = apply_letter_raw(x, *it);
    CHECK(canonical_form(x).origami == canonical_form(fixture("mbarstar")).origami);
}

TEST_CASE("orbit graphs are closed, canonical and basepoint independent") {
    for (const char* name : {"l3", "mstar", "dema", "ew", "ltilde"}) {
        const OrbitGraph g = sl2z_orbit(fixture(name));
        for (int i = 0; i < g.size(); ++i) {
            CHECK(canonical_form(g.nodes[static_cast<std::size_t>(i)]).origami ==
                  g.nodes[static_cast<std::size_t>(i)]);
            for (Letter l : kLetters)
                CHECK(g.step(i, l) >= 0);
            const OrbitGraph from = sl2z_orbit(g.nodes[static_cast<std::size_t>(i)]);
            CHECK(from.size() == g.size());
            for (const auto& n : from.nodes)
                CHECK(contains(g, n));
        }
        const auto words = g.tree_words();
        for (int i = 0; i < g.size(); ++i)
            CHECK(g.trace(g.basepoint, words[static_cast<std::size_t>(i)]) == i);
    }
}

TEST_CASE("threaded orbit construction matches the serial one") {
    for (const char* name : {"mstar", "ltilde", "mbarstar_d3"}) {
        const OrbitGraph a = sl2z_orbit(fixture(name), 1);
        const OrbitGraph b = sl2z_orbit(fixture(name), 4);
        CHECK(a.nodes == b.nodes);
        CHECK(to_json(a) == to_json(b));
    }
}

TEST_CASE("invariants are constant along orbits") {
    for (const char* name : {"l3", "mstar", "mstarstar", "dema", "ltilde"}) {
        const Origami o = fixture(name);
        for (const auto& n : sl2z_orbit(o).nodes) {
            CHECK(stratum(n) == stratum(o));
            CHECK(genus(n) == genus(o));
        }
    }
}

TEST_CASE("Veech generators") {
    const auto torus = veech_generators(fixture("torus"));
    REQUIRE(torus.size() == 2);
    CHECK(torus[0].matrix() == letter_matrix(Letter::T));
    CHECK(torus[1].matrix() == letter_matrix(Letter::S));
    auto has = [](const std::vector<Sl2zWord>& ws, Mat2 m) {
        return std::any_of(ws.begin(), ws.end(), [&](const Sl2zWord& w) { return w.matrix() == m; });
    };
    CHECK(has(veech_generators(fixture("l3")), Mat2{1, 2, 0, 1}));
    const auto dema = veech_generators(fixture("dema"));
    CHECK(has(dema, Mat2{1, 2, 0, 1}));
    CHECK(has(dema, Mat2{1, 0, 2, 1}));
    for (const char* name : {"l3", "mstar", "dema", "ltilde"}) {
        const OrbitGraph g = sl2z_orbit(fixture(name));
        for (const auto& w : veech_generators(g))
            CHECK(g.trace(g.basepoint, w) == g.basepoint);
    }
}

TEST_CASE("words for matrices") {
    CHECK(sl2z_word(Mat2{}).empty());
    CHECK(sl2z_word(Mat2{1, 6, 0, 1}) == Sl2zWord::parse("TTTTTT"));
    CHECK(sl2z_word(Mat2{0, 1, -1, 0}).matrix() == Sl2zWord::parse("TsT").matrix());
    CHECK(Sl2zWord::parse("TsT").matrix() == Mat2{0, 1, -1, 0});
    CHECK(sl2z_word(Mat2{-1, 0, 0, -1}).matrix() == Mat2{-1, 0, 0, -1});
    CHECK_THROWS_AS(sl2z_word(Mat2{2, 0, 0, 1}), DomainError);
    CHECK(Sl2zWord::parse("(TS)^2 T^3") == Sl2zWord::parse("TSTSTTT"));
    std::mt19937_64 rng(43);
    for (const auto& w : random_words(rng, 1000, 20)) {
        CHECK(sl2z_word(w.matrix()).matrix() == w.matrix());
        CHECK((w * w.inverse()).reduced().empty());
        CHECK(Sl2zWord::parse(w.to_string()) == w);
    }
}

#include "olab/error.hpp"
#include "olab/galois.hpp"
#include "olab/homology.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace olab;
using namespace olab::testing;

namespace {

struct Framed {
    IntMatrix m, form;
};

Framed dema_phi() {
    const Origami c = canonical_form(fixture("dema")).origami;
    const HomologyBasis b(c);
    const IntMatrix zero = tautological_split(b).zero;
    return {restrict(kz_matrix(c, Sl2zWord::parse("(TT)^4 SS TT SS")), zero),
            restricted_form(b.intersection(), zero)};
}

// x ↦ x + ⟨v, x⟩ v and its inverse, for ⟨x, y⟩ = xᵀ F y
std::pair<IntMatrix, IntMatrix> transvection(const IntVector& v, const IntMatrix& f) {
    const std::size_t n = v.size();
    IntMatrix vvf(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                vvf(i, j) += v[i] * v[k] * f(k, j);
    return {IntMatrix::identity(n) + vvf, IntMatrix::identity(n) - vvf};
}

std::vector<Rational> rational(const std::vector<long>& p) { return {p.begin(), p.end()}; }

} // namespace

TEST_CASE("reciprocal quartics from characteristic polynomials") {
    const ReciprocalQuartic q = quartic_from_charpoly(IntVector{1, -2, -30, -2, 1});
    CHECK(q.a == -2);
    CHECK(q.b == -30);
    CHECK(q.delta1 == 132);
    CHECK(q.delta2 == 768);
    CHECK(q.delta3 == 101376);
    CHECK(q.consistent());
    const ReciprocalQuartic c5 = quartic_from_charpoly(IntVector{1, 1, 1, 1, 1});
    CHECK(c5.delta1 == 5);
    CHECK(c5.delta2 == 5);
    CHECK_THROWS_AS(quartic_from_charpoly(IntVector{1, 2, 3, 4, 1}), DomainError);
    CHECK_THROWS_AS(quartic_from_charpoly(IntVector{1, 0, 1}), DomainError);
    CHECK(ReciprocalQuartic::from_ab(-2, -30).coefficients() == IntVector{1, -2, -30, -2, 1});
}

TEST_CASE("perfect squares") {
    CHECK(is_perfect_square(0));
    CHECK(is_perfect_square(1));
    CHECK(is_perfect_square(Integer("1000000000000000000000000000000000000000000")));
    CHECK_FALSE(is_perfect_square(132));
    CHECK_FALSE(is_perfect_square(768));
    CHECK_FALSE(is_perfect_square(-4));
}

TEST_CASE("real simple roots") {
    CHECK(has_real_simple_roots(ReciprocalQuartic::from_ab(-2, -30)));
    const ReciprocalQuartic q = ReciprocalQuartic::from_ab(-5, 5);
    CHECK(q.delta1 == 13);
    CHECK(q.t == 1);
    CHECK(q.d == -3);
    CHECK_FALSE(positive_root_criterion(q));
    CHECK_FALSE(has_real_simple_roots(q));
    CHECK(distinct_real_roots(rational({-1, 0, 1})) == 2);
    CHECK(distinct_real_roots(rational({1, 0, 1})) == 0);
    CHECK(distinct_real_roots(rational({1, -2, 1})) == 1);
}

TEST_CASE("Sturm counts agree with the root substitution") {
    std::mt19937_64 rng(81);
    std::uniform_int_distribution<long> coef(-50, 50);
    for (int trial = 0; trial < 1000; ++trial) {
        const long a = coef(rng), b = coef(rng);
        const ReciprocalQuartic q = ReciprocalQuartic::from_ab(a, b);
        CHECK_MESSAGE(has_real_simple_roots(q) == real_simple_roots_oracle(a, b), a << " " << b);
        if (positive_root_criterion(q))
            CHECK(has_real_simple_roots(q));
    }
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(ReciprocalQuartic::from_ab(-2, -30)));
    CHECK(is_irreducible(ReciprocalQuartic::from_ab(-1, -1)));
    CHECK(is_irreducible(ReciprocalQuartic::from_ab(1, 1)));
    // (x² − 3x + 1)²
    CHECK_FALSE(is_irreducible(ReciprocalQuartic::from_ab(-6, 11)));
    // (x − 1)²(x² + x + 1)
    CHECK_FALSE(is_irreducible(ReciprocalQuartic::from_ab(-1, 0)));
    // (x² + x − 1)(x² − x − 1)
    CHECK_FALSE(is_irreducible(ReciprocalQuartic::from_ab(0, -3)));
}

TEST_CASE("irreducibility agrees with a factor search") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> coef(-40, 40), small(-6, 6);
    int reducible = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        long a = coef(rng), b = coef(rng);
        if (trial % 2) {
            // products of reciprocal or anti-reciprocal quadratic pairs
            const long m = small(rng), n = small(rng);
            const auto p = trial % 4 == 1 ? poly_mul({1, m, 1}, {1, n, 1}) : poly_mul({-1, m, 1}, {-1, -m, 1});
            a = p[3];
            b = p[2];
        }
        const ReciprocalQuartic q = ReciprocalQuartic::from_ab(a, b);
        const bool oracle = irreducible_oracle(a, b);
        reducible += !oracle;
        CHECK_MESSAGE(is_irreducible(q) == oracle, a << " " << b);
        if (const auto fast = irreducible_fast_path(q))
            CHECK(*fast == oracle);
    }
    CHECK(reducible > 400);
}

TEST_CASE("Galois pinching in Sp(4, Z)") {
    const Framed phi = dema_phi();
    const PinchingReport r = is_galois_pinching_sp4(phi.m, phi.form);
    CHECK(r.pinching);
    REQUIRE(r.quartic);
    CHECK(r.quartic->delta1 == 132);
    CHECK(r.quartic->delta2 == 768);
    CHECK(r.quartic->delta3 == Integer(1024 * 9 * 11));
    CHECK(r.irreducible);
    CHECK(r.real_simple_roots);
    CHECK(r.squares_excluded);

    const IntMatrix blocks{{2, 0, 1, 0}, {0, 2, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    const PinchingReport b = is_galois_pinching_sp4(blocks);
    CHECK_FALSE(b.pinching);
    CHECK(b.quartic->delta1 == 0);
    CHECK_FALSE(b.irreducible);

    CHECK_THROWS_AS(is_galois_pinching_sp4(IntMatrix{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}),
                    DomainError);
    CHECK_THROWS_AS(is_galois_pinching(IntMatrix::identity(6)), DomainError);
}

TEST_CASE("pinching is invariant under symplectic conjugation") {
    const Framed phi = dema_phi();
    const PinchingReport base = is_galois_pinching_sp4(phi.m, phi.form);
    std::mt19937_64 rng(89);
    std::uniform_int_distribution<long> entry(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix g = IntMatrix::identity(4), g_inv = IntMatrix::identity(4);
        for (int k = 0; k < 3; ++k) {
            IntVector v(4);
            for (auto& x : v)
                x = entry(rng);
            const auto [t, t_inv] = transvection(v, phi.form);
            g = t * g;
            g_inv = g_inv * t_inv;
        }
        REQUIRE(g * g_inv == IntMatrix::identity(4));
        const PinchingReport r = is_galois_pinching_sp4(g * phi.m * g_inv, phi.form);
        CHECK(r.pinching == base.pinching);
        CHECK(r.charpoly == base.charpoly);
    }
}

TEST_CASE("Galois pinching in SL(2, Z)") {
    CHECK(is_galois_pinching_sl2(IntMatrix{{2, 1}, {1, 1}}));
    CHECK_FALSE(is_galois_pinching_sl2(IntMatrix::identity(2)));
    CHECK(is_galois_pinching_sl2(IntMatrix{{3, 1}, {2, 1}}));
    CHECK_FALSE(is_galois_pinching_sl2(IntMatrix{{1, 2}, {0, 1}}));
    CHECK(is_galois_pinching(IntMatrix{{2, 1}, {1, 1}}));
    CHECK_THROWS_AS(is_galois_pinching_sl2(IntMatrix{{2, 0}, {0, 1}}), DomainError);
}

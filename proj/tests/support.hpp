#pragma once

// Independent oracles shared by the unit and acceptance tests.

#include "olab/homology.hpp"
#include "olab/io.hpp"
#include "olab/origami.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace olab::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(OLAB_FIXTURE_DIR) + "/" + name + ".txt";
}

inline Origami fixture(const std::string& name) { return read_origami(fixture_path(name)); }

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

inline Origami random_origami(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(1, max_degree);
    const int n = deg(rng);
    while (true) {
        Permutation h = random_permutation(rng, n), v = random_permutation(rng, n);
        if (is_transitive(std::vector<Permutation>{h, v}))
            return Origami(std::move(h), std::move(v));
    }
}

// Vertices by gluing the four corners of every square.
inline int genus_oracle(const Origami& o) {
    const int n = o.degree();
    std::vector<int> parent(static_cast<std::size_t>(4 * n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };
    // corner ids: 4s + {0 BL, 1 BR, 2 TL, 3 TR}
    for (int s = 0; s < n; ++s) {
        unite(4 * s + 1, 4 * o.h()(s) + 0);
        unite(4 * s + 3, 4 * o.h()(s) + 2);
        unite(4 * s + 2, 4 * o.v()(s) + 0);
        unite(4 * s + 3, 4 * o.v()(s) + 1);
    }
    int vertices = 0;
    for (int x = 0; x < 4 * n; ++x)
        if (find(x) == x)
            ++vertices;
    // χ = V − E + F = V − 2N + N
    return 1 + (n - vertices) / 2;
}

// Relative periods: holonomies of edge chains whose boundary lies on the
// singular vertices (all vertices of a torus count as regular, so only
// absolute periods enter there).
inline bool reduced_oracle(const Origami& o) {
    const ChainComplexData cc = chain_complex(o);
    const VertexClasses& vc = cc.vertices;
    std::vector<std::size_t> regular;
    for (int w = 0; w < vc.count(); ++w)
        if (vc.angle[static_cast<std::size_t>(w)] == 1)
            regular.push_back(static_cast<std::size_t>(w));
    const std::size_t edges = cc.boundary1.cols();
    std::vector<IntVector> generators;
    if (regular.empty()) {
        for (std::size_t e = 0; e < edges; ++e) {
            IntVector c(edges, 0);
            c[e] = 1;
            generators.push_back(std::move(c));
        }
    } else {
        IntMatrix d(regular.size(), edges);
        for (std::size_t r = 0; r < regular.size(); ++r)
            for (std::size_t e = 0; e < edges; ++e)
                d(r, e) = cc.boundary1(regular[r], e);
        const IntMatrix k = integer_kernel(d);
        for (std::size_t j = 0; j < k.cols(); ++j)
            generators.push_back(k.column(j));
    }
    const std::size_t n = edges / 2;
    IntMatrix hol(2, generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j)
        for (std::size_t e = 0; e < edges; ++e)
            hol(e < n ? 0 : 1, j) += generators[j][e];
    const SmithForm snf = smith_normal_form(hol);
    return snf.rank == 2 && abs(snf.diagonal(0, 0)) == 1 && abs(snf.diagonal(1, 1)) == 1;
}

// Relabeling taking a to b, if one exists.
inline bool isomorphic_oracle(const Origami& a, const Origami& b) {
    const int n = a.degree();
    if (b.degree() != n)
        return false;
    for (int target = 0; target < n; ++target) {
        std::vector<int> phi(static_cast<std::size_t>(n), -1);
        std::vector<int> stack{0};
        phi[0] = target;
        bool ok = true;
        while (!stack.empty() && ok) {
            const int s = stack.back();
            stack.pop_back();
            const int t = phi[static_cast<std::size_t>(s)];
            const std::pair<int, int> moves[] = {{a.h()(s), b.h()(t)}, {a.v()(s), b.v()(t)},
                                                 {a.h_inv()(s), b.h_inv()(t)},
                                                 {a.v_inv()(s), b.v_inv()(t)}};
            for (auto [x, y] : moves) {
                int& slot = phi[static_cast<std::size_t>(x)];
                if (slot < 0) {
                    slot = y;
                    stack.push_back(x);
                } else if (slot != y) {
                    ok = false;
                }
            }
        }
        if (!ok)
            continue;
        std::vector<int> sorted = phi;
        std::sort(sorted.begin(), sorted.end());
        bool bijective = true;
        for (int i = 0; i < n; ++i)
            bijective = bijective && sorted[static_cast<std::size_t>(i)] == i;
        if (bijective)
            return true;
    }
    return false;
}

// Polynomials as coefficient vectors, constant term first.
inline std::vector<long> poly_mul(const std::vector<long>& p, const std::vector<long>& q) {
    std::vector<long> out(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            out[i + j] += p[i] * q[j];
    return out;
}

inline IntVector to_int_vector(const std::vector<long>& p) { return IntVector(p.begin(), p.end()); }

// Remainder of monic division is zero.
inline bool divides(const std::vector<long>& d, std::vector<long> p) {
    while (p.size() >= d.size()) {
        const long f = p.back();
        const std::size_t shift = p.size() - d.size();
        for (std::size_t k = 0; k < d.size(); ++k)
            p[shift + k] -= f * d[k];
        p.pop_back();
    }
    for (long c : p)
        if (c != 0)
            return false;
    return true;
}

// Exhaustive search for monic integral factors of x⁴ + a x³ + b x² + a x + 1.
inline bool irreducible_oracle(long a, long b) {
    const std::vector<long> p{1, a, b, a, 1};
    for (long r : {1L, -1L})
        if (divides({-r, 1}, p))
            return false;
    const long bound = 2 * (1 + std::max(std::labs(a), std::labs(b)));
    for (long c : {1L, -1L})
        for (long m = -bound; m <= bound; ++m)
            if (divides({c, m, 1}, p))
                return false;
    return true;
}

// Roots of the quartic from y = x + 1/x: y² + a y + (b − 2) = 0; each real
// |y| > 2 gives two distinct real x.
inline bool real_simple_roots_oracle(long a, long b, double tol = 1e-9) {
    const double disc = static_cast<double>(a) * a - 4.0 * (static_cast<double>(b) - 2.0);
    if (disc <= tol)
        return false;
    const double y1 = (-static_cast<double>(a) + std::sqrt(disc)) / 2.0;
    const double y2 = (-static_cast<double>(a) - std::sqrt(disc)) / 2.0;
    return std::abs(y1) - 2.0 > tol && std::abs(y2) - 2.0 > tol;
}

inline std::vector<Sl2zWord> random_words(std::mt19937_64& rng, int count, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len), letter(0, 3);
    std::vector<Sl2zWord> out;
    for (int i = 0; i < count; ++i) {
        std::vector<Letter> ls;
        const int n = len(rng);
        for (int k = 0; k < n; ++k)
            ls.push_back(kLetters[static_cast<std::size_t>(letter(rng))]);
        out.emplace_back(std::move(ls));
    }
    return out;
}

inline const std::vector<std::string>& all_fixtures() {
    static const std::vector<std::string> names{"torus",       "l3",          "mstar",
                                                "mstarstar",   "mbarstar",    "mbarstar_d3",
                                                "mbarstar_d5", "mbarstar_d7", "dema",
                                                "ew",          "ltilde"};
    return names;
}

} // namespace olab::testing

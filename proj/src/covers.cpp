#include "olab/covers.hpp"

#include "olab/error.hpp"
#include "olab/io.hpp"

#include <algorithm>

namespace olab {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

} // namespace

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table,
                                   std::vector<std::string> names)
    : table_(std::move(table)), names_(std::move(names)) {
    const int n = order();
    if (n == 0 || names_.size() != table_.size())
        throw DomainError("group table: empty or names do not match the order");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw DomainError("group table: not square");
        for (int x : row)
            if (x < 0 || x >= n)
                throw DomainError("group table: entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok)
            identity_ = e;
    }
    if (identity_ < 0)
        throw DomainError("group table: no identity");
    inverse_.assign(u(n), -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (mul(x, y) == identity_ && mul(y, x) == identity_)
                inverse_[u(x)] = y;
    for (int x = 0; x < n; ++x)
        if (inverse_[u(x)] < 0)
            throw DomainError("group table: element " + names_[u(x)] + " has no inverse");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                    throw DomainError("group table: not associative");
}

int FiniteGroupTable::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<int>(i);
    throw DomainError("unknown group element '" + std::string(name) + "'");
}

FiniteGroupTable quaternion_group() {
    // element 2u + s is (−1)^s times unit u ∈ {1, i, j, k}
    static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static const int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            const int ux = x / 2, uy = y / 2;
            const int sign = (x % 2 + y % 2 + unit_sign[ux][uy]) % 2;
            table[u(x)][u(y)] = 2 * unit_prod[ux][uy] + sign;
        }
    return FiniteGroupTable(std::move(table), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroupTable cyclic_group(int n) {
    if (n < 1)
        throw DomainError("cyclic group order must be positive");
    std::vector<std::vector<int>> table(u(n), std::vector<int>(u(n)));
    std::vector<std::string> names;
    for (int x = 0; x < n; ++x) {
        names.push_back(std::to_string(x));
        for (int y = 0; y < n; ++y)
            table[u(x)][u(y)] = (x + y) % n;
    }
    return FiniteGroupTable(std::move(table), std::move(names));
}

FiniteGroupTable trivial_group() { return cyclic_group(1); }

Origami group_cover(const Origami& o, const EdgeCocycle& c) {
    const int n = o.degree();
    const int order = c.group.order();
    if (static_cast<int>(c.wh.size()) != n || static_cast<int>(c.wv.size()) != n)
        throw DomainError("cocycle must assign a group element to every square");
    for (int s = 0; s < n; ++s)
        if (c.wh[u(s)] < 0 || c.wh[u(s)] >= order || c.wv[u(s)] < 0 || c.wv[u(s)] >= order)
            throw DomainError("cocycle value out of range");
    std::vector<int> h(u(n * order)), v(u(n * order));
    for (int g = 0; g < order; ++g)
        for (int s = 0; s < n; ++s) {
            h[u(g * n + s)] = c.group.mul(g, c.wh[u(s)]) * n + o.h()(s);
            v[u(g * n + s)] = c.group.mul(g, c.wv[u(s)]) * n + o.v()(s);
        }
    Permutation ph(std::move(h)), pv(std::move(v));
    if (!is_transitive(std::vector<Permutation>{ph, pv}))
        throw DomainError("cover is disconnected");
    return Origami(std::move(ph), std::move(pv), o.label().empty() ? "" : o.label() + "-cover");
}

EdgeCocycle wrap_cocycle(const Origami& o, const FiniteGroupTable& group, int a, int b) {
    const int n = o.degree();
    EdgeCocycle c{group, std::vector<int>(u(n), group.identity()),
                  std::vector<int>(u(n), group.identity())};
    for (const auto& cyc : o.h().cycles()) {
        const int lo = *std::min_element(cyc.begin(), cyc.end());
        c.wh[u(o.h_inv()(lo))] = a;
    }
    for (const auto& cyc : o.v().cycles()) {
        const int lo = *std::min_element(cyc.begin(), cyc.end());
        c.wv[u(o.v_inv()(lo))] = b;
    }
    return c;
}

Permutation deck_transformation(const Origami& base, const FiniteGroupTable& group, int g0) {
    const int n = base.degree();
    std::vector<int> img(u(n * group.order()));
    for (int g = 0; g < group.order(); ++g)
        for (int s = 0; s < n; ++s)
            img[u(g * n + s)] = group.mul(g0, g) * n + s;
    return Permutation(std::move(img));
}

Origami eierlegende_wollmilchsau() {
    const Origami torus(Permutation::identity(1), Permutation::identity(1), "torus");
    const auto q = quaternion_group();
    Origami o = group_cover(torus, {q, {q.find("i")}, {q.find("j")}});
    o.set_label("EW");
    return o;
}

Origami quaternionic_l3() {
    const Origami l3(parse_cycles("(1,2)(3)"), parse_cycles("(1,3)(2)"), "L3");
    const auto q = quaternion_group();
    Origami o = group_cover(l3, wrap_cocycle(l3, q, q.find("i"), q.find("j")));
    o.set_label("LTILDE");
    return o;
}

QuotientReport quotient_dims_check(const Origami& o, const Permutation& central) {
    if (central.degree() != o.degree() || !(compose(central, o.h()) == compose(o.h(), central)) ||
        !(compose(central, o.v()) == compose(o.v(), central)))
        throw DomainError("quotient: permutation is not an automorphism");
    const int n = o.degree();
    std::vector<int> orbit(u(n), -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (orbit[u(s)] >= 0)
            continue;
        for (int x = s; orbit[u(x)] < 0; x = central(x))
            orbit[u(x)] = count;
        ++count;
    }
    std::vector<int> h(u(count)), v(u(count));
    for (int s = 0; s < n; ++s) {
        h[u(orbit[u(s)])] = orbit[u(o.h()(s))];
        v[u(orbit[u(s)])] = orbit[u(o.v()(s))];
    }
    QuotientReport r;
    r.quotient = Origami(Permutation(std::move(h)), Permutation(std::move(v)),
                         o.label().empty() ? "" : o.label() + "-quotient");
    r.genus = genus(r.quotient);
    r.stratum = stratum(r.quotient);
    return r;
}

bool riemann_hurwitz_consistent(const Origami& base, const Origami& cover, int group_order) {
    const int n = base.degree();
    if (cover.degree() != n * group_order)
        return false;
    const VertexClasses bv = bottom_left_vertices(base);
    const VertexClasses cv = bottom_left_vertices(cover);
    std::vector<int> lies_over(u(cv.count()), -1);
    for (int t = 0; t < cover.degree(); ++t) {
        const int w = cv.of_square[u(t)];
        const int v = bv.of_square[u(t % n)];
        if (lies_over[u(w)] >= 0 && lies_over[u(w)] != v)
            return false;
        lies_over[u(w)] = v;
    }
    std::vector<int> angle_sum(u(bv.count()), 0), preimages(u(bv.count()), 0);
    for (int w = 0; w < cv.count(); ++w) {
        angle_sum[u(lies_over[u(w)])] += cv.angle[u(w)];
        preimages[u(lies_over[u(w)])] += 1;
    }
    int defect = 0;
    for (int v = 0; v < bv.count(); ++v) {
        if (angle_sum[u(v)] != group_order * bv.angle[u(v)])
            return false;
        defect += group_order - preimages[u(v)];
    }
    const int chi_base = 2 - 2 * genus(base);
    const int chi_cover = 2 - 2 * genus(cover);
    return chi_cover == group_order * chi_base - defect;
}

Origami ingest_corpus(const std::filesystem::path& path) { return read_origami(path); }

} // namespace olab

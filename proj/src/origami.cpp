#include "olab/origami.hpp"

#include "olab/error.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <queue>
#include <sstream>

namespace olab {

Origami::Origami(Permutation h, Permutation v, std::string label)
    : h_(std::move(h)), v_(std::move(v)), label_(std::move(label)) {
    if (h_.degree() != v_.degree())
        throw DomainError("origami: h and v have different degrees");
    if (h_.degree() < 1)
        throw DomainError("origami: degree must be positive");
    const std::array<Permutation, 2> gens{h_, v_};
    if (!is_transitive(gens))
        throw DomainError("origami: <h,v> is not transitive");
    h_inv_ = inverse(h_);
    v_inv_ = inverse(v_);
}

std::string Stratum::to_string() const {
    std::ostringstream os;
    os << "H(";
    if (orders.empty())
        os << '0';
    for (std::size_t i = 0; i < orders.size(); ++i)
        os << (i ? "," : "") << orders[i];
    os << ')';
    return os.str();
}

Permutation corner_permutation(const Origami& o) {
    return compose(o.v_inv(), compose(o.h_inv(), compose(o.v(), o.h())));
}

VertexClasses bottom_left_vertices(const Origami& o) {
    // BL(s) is also the bottom-left corner of v h v⁻¹ h⁻¹ (s)
    const int n = o.degree();
    VertexClasses out;
    out.of_square.assign(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (out.of_square[static_cast<std::size_t>(s)] >= 0)
            continue;
        const int id = out.count();
        int len = 0;
        for (int t = s; out.of_square[static_cast<std::size_t>(t)] < 0;
             t = o.v()(o.h()(o.v_inv()(o.h_inv()(t))))) {
            out.of_square[static_cast<std::size_t>(t)] = id;
            ++len;
        }
        out.angle.push_back(len);
    }
    return out;
}

std::vector<int> singularities(const Origami& o) {
    std::vector<int> out;
    for (int len : cycle_type(corner_permutation(o)))
        if (len >= 2)
            out.push_back(len - 1);
    std::sort(out.rbegin(), out.rend());
    return out;
}

int genus(const Origami& o) {
    const int vertices = static_cast<int>(corner_permutation(o).cycles().size());
    const int twice = 2 + o.degree() - vertices;
    OLAB_ASSERT(twice % 2 == 0, "Euler characteristic parity");
    const int g = twice / 2;
    const auto orders = singularities(o);
    OLAB_ASSERT(std::accumulate(orders.begin(), orders.end(), 0) == 2 * g - 2,
                "sum of zero orders equals 2g-2");
    return g;
}

Stratum stratum(const Origami& o) { return Stratum{singularities(o), genus(o)}; }

namespace {

// Upper-triangular basis of a sublattice of Z².
struct Lattice2 {
    std::int64_t a = 0, b = 0; // row (a, b)
    std::int64_t c = 0;        // row (0, c)

    static std::int64_t gcd(std::int64_t x, std::int64_t y) {
        return std::gcd(x < 0 ? -x : x, y < 0 ? -y : y);
    }

    void add(std::int64_t x, std::int64_t y) {
        if (x == 0) {
            c = gcd(c, y);
        } else if (a == 0) {
            // previous first row had a == 0, fold it into c
            c = gcd(c, b);
            a = x;
            b = y;
        } else {
            // extended gcd on the first coordinate
            std::int64_t r0 = a, r1 = x, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                std::int64_t q = r0 / r1;
                std::int64_t tmp = r0 - q * r1;
                r0 = r1;
                r1 = tmp;
                tmp = s0 - q * s1;
                s0 = s1;
                s1 = tmp;
                tmp = t0 - q * t1;
                t0 = t1;
                t1 = tmp;
            }
            const std::int64_t g = r0;
            const std::int64_t nb = s0 * b + t0 * y;
            c = gcd(c, (x / g) * b - (a / g) * y);
            a = g;
            b = nb;
        }
        if (a < 0) {
            a = -a;
            b = -b;
        }
        if (c != 0)
            b %= c;
    }

    std::int64_t index() const { return a * c < 0 ? -a * c : a * c; }
};

} // namespace

bool is_reduced(const Origami& o) {
    const int n = o.degree();
    std::vector<std::array<std::int64_t, 2>> pos(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        const int s = q.front();
        q.pop();
        const auto p = pos[static_cast<std::size_t>(s)];
        const std::array<std::pair<int, std::array<std::int64_t, 2>>, 4> nbrs{{
            {o.h()(s), {p[0] + 1, p[1]}},
            {o.v()(s), {p[0], p[1] + 1}},
            {o.h_inv()(s), {p[0] - 1, p[1]}},
            {o.v_inv()(s), {p[0], p[1] - 1}},
        }};
        for (const auto& [t, pt] : nbrs)
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                pos[static_cast<std::size_t>(t)] = pt;
                q.push(t);
            }
    }

    Lattice2 lat;
    for (int s = 0; s < n; ++s) {
        const auto& p = pos[static_cast<std::size_t>(s)];
        const auto& ph = pos[static_cast<std::size_t>(o.h()(s))];
        const auto& pv = pos[static_cast<std::size_t>(o.v()(s))];
        lat.add(p[0] + 1 - ph[0], p[1] - ph[1]);
        lat.add(p[0] - pv[0], p[1] + 1 - pv[1]);
    }

    const VertexClasses vc = bottom_left_vertices(o);
    std::vector<int> rep(static_cast<std::size_t>(vc.count()), -1);
    for (int s = 0; s < n; ++s) {
        int& r = rep[static_cast<std::size_t>(vc.of_square[static_cast<std::size_t>(s)])];
        if (r < 0) {
            r = s;
            continue;
        }
        const auto& p = pos[static_cast<std::size_t>(s)];
        const auto& pr = pos[static_cast<std::size_t>(r)];
        lat.add(p[0] - pr[0], p[1] - pr[1]);
    }
    // relative periods between marked points
    int first_marked = -1;
    for (int k = 0; k < vc.count(); ++k) {
        if (vc.angle[static_cast<std::size_t>(k)] < 2)
            continue;
        const int s = rep[static_cast<std::size_t>(k)];
        if (first_marked < 0) {
            first_marked = s;
            continue;
        }
        const auto& p = pos[static_cast<std::size_t>(s)];
        const auto& pr = pos[static_cast<std::size_t>(first_marked)];
        lat.add(p[0] - pr[0], p[1] - pr[1]);
    }
    return lat.index() == 1;
}

std::vector<Permutation> automorphisms(const Origami& o) {
    const int n = o.degree();
    std::vector<Permutation> out;
    std::vector<int> tau(static_cast<std::size_t>(n));
    for (int target = 0; target < n; ++target) {
        std::fill(tau.begin(), tau.end(), -1);
        tau[0] = target;
        std::queue<int> q;
        q.push(0);
        bool ok = true;
        while (ok && !q.empty()) {
            const int s = q.front();
            q.pop();
            const int ts = tau[static_cast<std::size_t>(s)];
            const std::array<std::pair<int, int>, 4> pairs{{
                {o.h()(s), o.h()(ts)},
                {o.v()(s), o.v()(ts)},
                {o.h_inv()(s), o.h_inv()(ts)},
                {o.v_inv()(s), o.v_inv()(ts)},
            }};
            for (const auto& [x, y] : pairs) {
                int& slot = tau[static_cast<std::size_t>(x)];
                if (slot < 0) {
                    slot = y;
                    q.push(x);
                } else if (slot != y) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok)
            continue;
        // injectivity follows from transitivity, but check anyway
        std::vector<char> hit(static_cast<std::size_t>(n), 0);
        for (int x : tau)
            if (hit[static_cast<std::size_t>(x)]++)
                ok = false;
        if (ok)
            out.emplace_back(tau);
    }
    OLAB_ASSERT(!out.empty() && out.front().is_identity(),
                "automorphism group contains the identity");
    return out;
}

Origami relabeled(const Origami& o, const Permutation& r) {
    return Origami(conjugate(o.h(), r), conjugate(o.v(), r), o.label());
}

CanonicalForm canonical_form(const Origami& o) {
    const int n = o.degree();
    const auto un = static_cast<std::size_t>(n);
    std::vector<int> best_h, best_v, best_label;
    std::vector<int> label(un), order(un), th(un), tv(un);

    for (int start = 0; start < n; ++start) {
        std::fill(label.begin(), label.end(), -1);
        int next = 0;
        label[static_cast<std::size_t>(start)] = next;
        order[static_cast<std::size_t>(next++)] = start;
        // -1 undecided, 0 equal so far, 1 worse
        int cmp = best_h.empty() ? -1 : 0;
        for (int k = 0; k < n; ++k) {
            const int s = order[static_cast<std::size_t>(k)];
            for (int t : {o.h()(s), o.v()(s), o.h_inv()(s), o.v_inv()(s)})
                if (label[static_cast<std::size_t>(t)] < 0) {
                    label[static_cast<std::size_t>(t)] = next;
                    order[static_cast<std::size_t>(next++)] = t;
                }
            th[static_cast<std::size_t>(k)] = label[static_cast<std::size_t>(o.h()(s))];
            if (cmp == 0) {
                const int b = best_h[static_cast<std::size_t>(k)];
                if (th[static_cast<std::size_t>(k)] < b)
                    cmp = -1;
                else if (th[static_cast<std::size_t>(k)] > b)
                    cmp = 1;
            }
            if (cmp == 1)
                break;
        }
        if (cmp == 1)
            continue;
        for (int k = 0; k < n; ++k)
            tv[static_cast<std::size_t>(k)] =
                label[static_cast<std::size_t>(o.v()(order[static_cast<std::size_t>(k)]))];
        if (cmp == 0 && tv >= best_v)
            continue;
        best_h = th;
        best_v = tv;
        best_label = label;
    }
    Permutation r(best_label);
    Origami canon(Permutation(best_h), Permutation(best_v), o.label());
    return CanonicalForm{std::move(canon), std::move(r)};
}

} // namespace olab

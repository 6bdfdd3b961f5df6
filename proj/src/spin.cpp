#include "olab/spin.hpp"

#include "olab/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>

namespace olab {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

int direction(Step s) {
    switch (s) {
    case Step::R:
        return 0;
    case Step::U:
        return 1;
    case Step::L:
        return 2;
    case Step::D:
        return 3;
    }
    return 0;
}

Step opposite(Step s) {
    switch (s) {
    case Step::R:
        return Step::L;
    case Step::L:
        return Step::R;
    case Step::U:
        return Step::D;
    case Step::D:
        return Step::U;
    }
    return s;
}

int next_square(const Origami& o, int s, Step st) {
    switch (st) {
    case Step::R:
        return o.h()(s);
    case Step::L:
        return o.h_inv()(s);
    case Step::U:
        return o.v()(s);
    case Step::D:
        return o.v_inv()(s);
    }
    return s;
}

void require_closed(const Origami& o, const CenterPath& p) {
    if (p.start < 0 || p.start >= o.degree())
        throw DomainError("centre path starts outside the origami");
    if (p.steps.empty())
        throw DomainError("centre path is empty");
    if (!is_closed(o, p))
        throw DomainError("centre path is not closed");
}

} // namespace

CenterPath CenterPath::parse(int start, std::string_view steps) {
    CenterPath p;
    p.start = start;
    for (char c : steps) {
        switch (c) {
        case 'R':
        case 'L':
        case 'U':
        case 'D':
            p.steps.push_back(static_cast<Step>(c));
            break;
        case ' ':
        case ',':
            break;
        default:
            throw ParseError(std::string("centre path: unexpected '") + c + "'");
        }
    }
    return p;
}

std::string CenterPath::to_string() const {
    std::string out;
    for (Step s : steps)
        out += static_cast<char>(s);
    return out;
}

std::vector<int> visited_squares(const Origami& o, const CenterPath& p) {
    std::vector<int> out{p.start};
    for (Step s : p.steps)
        out.push_back(next_square(o, out.back(), s));
    return out;
}

bool is_closed(const Origami& o, const CenterPath& p) {
    return visited_squares(o, p).back() == p.start;
}

CenterPath cyclically_reduced(const Origami& o, const CenterPath& p) {
    require_closed(o, p);
    std::vector<Step> st;
    for (Step s : p.steps) {
        if (!st.empty() && st.back() == opposite(s))
            st.pop_back();
        else
            st.push_back(s);
    }
    int start = p.start;
    std::size_t b = 0, e = st.size();
    while (e - b >= 2 && st[b] == opposite(st[e - 1])) {
        start = next_square(o, start, st[b]);
        ++b;
        --e;
    }
    return CenterPath{start, std::vector<Step>(st.begin() + static_cast<long>(b),
                                               st.begin() + static_cast<long>(e))};
}

Chain path_chain(const Origami& o, const CenterPath& p) {
    const int n = o.degree();
    Chain c(u(2 * n), 0);
    int s = p.start;
    for (Step st : p.steps) {
        switch (st) {
        case Step::R:
            c[u(s)] += 1;
            break;
        case Step::U:
            c[u(n + s)] += 1;
            break;
        case Step::L:
            c[u(o.h_inv()(s))] -= 1;
            break;
        case Step::D:
            c[u(n + o.v_inv()(s))] -= 1;
            break;
        }
        s = next_square(o, s, st);
    }
    return c;
}

int winding_index(const Origami& o, const CenterPath& p) {
    require_closed(o, p);
    const std::size_t k = p.steps.size();
    int turns = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const int d = (direction(p.steps[(i + 1) % k]) - direction(p.steps[i]) + 4) % 4;
        if (d == 1)
            ++turns;
        else if (d == 3)
            --turns;
        else if (d == 2)
            throw DomainError("centre path backtracks");
    }
    if (turns % 4 != 0)
        throw InternalError("turn count of a closed path is not a multiple of 4");
    return turns / 4;
}

int self_intersections(const Origami& o, const CenterPath& p) {
    require_closed(o, p);
    const auto squares = visited_squares(o, p);
    const std::size_t k = p.steps.size();

    // every step crosses one edge: (vertical?, index)
    std::vector<std::pair<int, int>> edge(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int s = squares[i];
        switch (p.steps[i]) {
        case Step::R:
            edge[i] = {1, o.h()(s)};
            break;
        case Step::L:
            edge[i] = {1, s};
            break;
        case Step::U:
            edge[i] = {0, o.v()(s)};
            break;
        case Step::D:
            edge[i] = {0, s};
            break;
        }
    }
    // crossings of one edge are spread along it in visit order
    std::map<std::pair<int, int>, int> count;
    std::vector<int> rank(k);
    for (std::size_t i = 0; i < k; ++i)
        rank[i] = count[edge[i]]++;

    // boundary position of a crossing seen from a square side, counterclockwise
    // from the bottom-left corner
    auto key = [&](std::size_t step, int side) -> long {
        const int cnt = count[edge[step]];
        const int r = rank[step];
        const int along = side <= 1 ? r : cnt - 1 - r;
        return static_cast<long>(side) * (1L << 32) + along;
    };
    auto entry_side = [](Step prev) {
        switch (prev) {
        case Step::R:
            return 3;
        case Step::L:
            return 1;
        case Step::U:
            return 0;
        case Step::D:
            return 2;
        }
        return 0;
    };
    auto exit_side = [](Step next) {
        switch (next) {
        case Step::R:
            return 1;
        case Step::L:
            return 3;
        case Step::U:
            return 2;
        case Step::D:
            return 0;
        }
        return 0;
    };

    std::map<int, std::vector<std::pair<long, long>>> chords;
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t prev = (j + k - 1) % k;
        long a = key(prev, entry_side(p.steps[prev]));
        long b = key(j, exit_side(p.steps[j]));
        if (a > b)
            std::swap(a, b);
        chords[squares[j]].emplace_back(a, b);
    }
    int total = 0;
    for (const auto& [sq, list] : chords)
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y) {
                const auto [a, b] = list[x];
                const auto [c, d] = list[y];
                const bool c_in = a < c && c < b;
                const bool d_in = a < d && d < b;
                if (c_in != d_in)
                    ++total;
            }
    return total;
}

int phi_of_path(const Origami& o, const CenterPath& p) {
    const int value = winding_index(o, p) + 1 + self_intersections(o, p);
    return ((value % 2) + 2) % 2;
}

int arf_from_data(const QuadraticFormData& q) {
    const std::size_t n = q.basis.size();
    if (q.phi.size() != n || q.intersection_mod2.size() != n)
        throw DomainError("quadratic form data: inconsistent sizes");
    // elements as combinations of the input basis
    std::vector<std::vector<int>> elems(n, std::vector<int>(n, 0));
    std::vector<int> phi = q.phi;
    for (std::size_t i = 0; i < n; ++i)
        elems[i][i] = 1;
    auto pair = [&](const std::vector<int>& x, const std::vector<int>& y) {
        int total = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i])
                for (std::size_t j = 0; j < n; ++j)
                    if (y[j])
                        total ^= q.intersection_mod2[i][j] & 1;
        return total;
    };
    std::vector<std::size_t> alive(n);
    for (std::size_t i = 0; i < n; ++i)
        alive[i] = i;
    int arf = 0;
    while (!alive.empty()) {
        const std::size_t a = alive.front();
        std::size_t partner = n;
        for (std::size_t t = 1; t < alive.size(); ++t)
            if (pair(elems[a], elems[alive[t]])) {
                partner = alive[t];
                break;
            }
        if (partner == n)
            throw DomainError("arf invariant: intersection form is degenerate");
        const std::size_t b = partner;
        arf ^= phi[a] & phi[b];
        std::vector<std::size_t> rest;
        for (std::size_t c : alive) {
            if (c == a || c == b)
                continue;
            const int eps = pair(elems[c], elems[b]);
            const int del = pair(elems[c], elems[a]);
            int value = phi[c];
            if (eps) {
                value ^= phi[a] ^ pair(elems[c], elems[a]);
                for (std::size_t i = 0; i < n; ++i)
                    elems[c][i] ^= elems[a][i];
            }
            if (del) {
                // pairing of the updated c with b
                value ^= phi[b] ^ pair(elems[c], elems[b]);
                for (std::size_t i = 0; i < n; ++i)
                    elems[c][i] ^= elems[b][i];
            }
            phi[c] = value;
            rest.push_back(c);
        }
        alive = std::move(rest);
    }
    return arf;
}

namespace {

// Mod-2 echelon basis with the combination bookkeeping dropped.
class Mod2Basis {
  public:
    explicit Mod2Basis(std::size_t dim) : dim_(dim) {}

    bool add(std::vector<int> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (v[pivots_[r]])
                for (std::size_t i = 0; i < dim_; ++i)
                    v[i] ^= rows_[r][i];
        std::size_t p = 0;
        while (p < dim_ && !v[p])
            ++p;
        if (p == dim_)
            return false;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }
    std::size_t size() const { return rows_.size(); }

  private:
    std::size_t dim_;
    std::vector<std::vector<int>> rows_;
    std::vector<std::size_t> pivots_;
};

std::vector<CenterPath> candidate_paths(const Origami& o) {
    std::vector<CenterPath> out;
    for (const auto& c : o.h().cycles())
        out.push_back(CenterPath{c.front(), std::vector<Step>(c.size(), Step::R)});
    for (const auto& c : o.v().cycles())
        out.push_back(CenterPath{c.front(), std::vector<Step>(c.size(), Step::U)});
    // staircases R^a U^b along the cycles of v^b h^a
    for (int total = 2; total <= 4; ++total)
        for (int a = 1; a < total; ++a) {
            const int b = total - a;
            std::vector<Step> unit(u(a), Step::R);
            unit.insert(unit.end(), u(b), Step::U);
            std::vector<char> seen(u(o.degree()), 0);
            for (int s = 0; s < o.degree(); ++s) {
                if (seen[u(s)])
                    continue;
                CenterPath p{s, {}};
                int t = s;
                do {
                    seen[u(t)] = 1;
                    for (Step st : unit)
                        t = next_square(o, t, st);
                    p.steps.insert(p.steps.end(), unit.begin(), unit.end());
                } while (t != s);
                out.push_back(std::move(p));
            }
        }
    // fundamental cycles of a spanning tree of the dual graph
    const int n = o.degree();
    std::vector<std::vector<Step>> to_root(u(n));
    std::vector<char> seen(u(n), 0);
    std::vector<std::pair<int, Step>> tree_in(u(n), {-1, Step::R});
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::vector<std::vector<Step>> from_root(u(n));
    while (!q.empty()) {
        const int s = q.front();
        q.pop();
        for (Step st : {Step::R, Step::U, Step::L, Step::D}) {
            const int t = next_square(o, s, st);
            if (seen[u(t)])
                continue;
            seen[u(t)] = 1;
            tree_in[u(t)] = {s, st};
            from_root[u(t)] = from_root[u(s)];
            from_root[u(t)].push_back(st);
            q.push(t);
        }
    }
    for (int s = 0; s < n; ++s)
        for (Step st : {Step::R, Step::U}) {
            const int t = next_square(o, s, st);
            if (tree_in[u(t)].first == s && tree_in[u(t)].second == st)
                continue;
            std::vector<Step> steps = from_root[u(s)];
            steps.push_back(st);
            for (auto it = from_root[u(t)].rbegin(); it != from_root[u(t)].rend(); ++it)
                steps.push_back(opposite(*it));
            CenterPath p = cyclically_reduced(o, CenterPath{0, std::move(steps)});
            if (!p.steps.empty())
                out.push_back(std::move(p));
        }
    return out;
}

} // namespace

QuadraticFormData quadratic_form(const Origami& o, const HomologyBasis& b) {
    const std::size_t dim = u(b.rank());
    Mod2Basis span(dim);
    QuadraticFormData q;
    for (const CenterPath& p : candidate_paths(o)) {
        if (span.size() == dim)
            break;
        IntVector coords = b.coordinates(path_chain(o, p));
        std::vector<int> bits(dim);
        for (std::size_t i = 0; i < dim; ++i)
            bits[i] = mpz_odd_p(coords[i].get_mpz_t()) ? 1 : 0;
        if (!span.add(bits))
            continue;
        q.basis.push_back(std::move(coords));
        q.phi.push_back(phi_of_path(o, p));
    }
    OLAB_ASSERT(span.size() == dim, "centre paths span H1 mod 2");
    q.intersection_mod2.assign(dim, std::vector<int>(dim, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            q.intersection_mod2[i][j] =
                mpz_odd_p(b.pairing(q.basis[i], q.basis[j]).get_mpz_t()) ? 1 : 0;
    return q;
}

QuadraticFormData quadratic_form(const Origami& o) { return quadratic_form(o, HomologyBasis(o)); }

int spin_parity(const Origami& o) {
    for (int k : singularities(o))
        if (k % 2 != 0)
            throw DomainError("spin parity needs even zero orders");
    return arf_from_data(quadratic_form(o));
}

InvolutionSearch hyperelliptic_involution(const Origami& o) {
    const int n = o.degree();
    const int g = genus(o);
    const VertexClasses vc = bottom_left_vertices(o);
    InvolutionSearch out;
    std::vector<int> rho(u(n));
    for (int target = 0; target < n; ++target) {
        std::fill(rho.begin(), rho.end(), -1);
        rho[0] = target;
        std::queue<int> q;
        q.push(0);
        bool ok = true;
        while (ok && !q.empty()) {
            const int s = q.front();
            q.pop();
            const int r = rho[u(s)];
            const std::array<std::pair<int, int>, 4> pairs{{
                {o.h()(s), o.h_inv()(r)},
                {o.v()(s), o.v_inv()(r)},
                {o.h_inv()(s), o.h()(r)},
                {o.v_inv()(s), o.v()(r)},
            }};
            for (const auto& [x, y] : pairs) {
                int& slot = rho[u(x)];
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
        bool involution = true;
        for (int s = 0; s < n; ++s)
            if (rho[u(rho[u(s)])] != s)
                involution = false;
        if (!involution)
            continue;
        ++out.candidates;
        int fixed = 0;
        for (int s = 0; s < n; ++s) {
            const int r = rho[u(s)];
            fixed += r == s;              // square centre
            fixed += o.v()(r) == s;       // bottom edge midpoint
            fixed += o.h()(r) == s;       // left edge midpoint
        }
        // BL(s) goes to TR(ρ s) = BL(h v ρ s)
        std::vector<int> image(u(vc.count()), -1);
        for (int s = 0; s < n; ++s)
            image[u(vc.of_square[u(s)])] = vc.of_square[u(o.h()(o.v()(rho[u(s)])))];
        int fixed_zeros = 0;
        for (int p = 0; p < vc.count(); ++p)
            if (image[u(p)] == p) {
                ++fixed;
                fixed_zeros += vc.angle[u(p)] > 1;
            }
        if (fixed == 2 * g + 2 && !out.found) {
            out.found = true;
            out.rho = Permutation(rho);
            out.fixed_points = fixed;
            out.fixed_zeros = fixed_zeros;
        }
        if (!out.found)
            out.fixed_points = std::max(out.fixed_points, fixed);
    }
    return out;
}

std::string to_string(ComponentTag t) {
    switch (t) {
    case ComponentTag::Connected:
        return "connected";
    case ComponentTag::Hyperelliptic:
        return "hyperelliptic";
    case ComponentTag::EvenSpin:
        return "even-spin";
    case ComponentTag::OddSpin:
        return "odd-spin";
    case ComponentTag::NonHyperelliptic:
        return "non-hyperelliptic";
    case ComponentTag::HyperellipticOrSpinUndecided:
        return "hyperelliptic-or-spin-undecided";
    }
    return "?";
}

ComponentReport component(const Origami& o) {
    ComponentReport rep;
    rep.stratum = stratum(o);
    const int g = rep.stratum.genus;
    const auto& orders = rep.stratum.orders;
    const bool all_even =
        std::all_of(orders.begin(), orders.end(), [](int k) { return k % 2 == 0; });
    if (all_even)
        rep.parity = spin_parity(o);
    if (g <= 2) {
        rep.tag = ComponentTag::Connected;
        return rep;
    }
    const bool minimal = orders.size() == 1 && orders[0] == 2 * g - 2;
    const bool double_zero = orders.size() == 2 && orders[0] == g - 1 && orders[1] == g - 1;
    if (minimal || double_zero) {
        // in H(g-1,g-1) the hyperelliptic component needs the zeros swapped
        const InvolutionSearch search = hyperelliptic_involution(o);
        const bool hyp = search.found && (minimal || search.fixed_zeros == 0);
        rep.hyperelliptic = hyp;
        if (!all_even) {
            rep.tag = hyp ? ComponentTag::Hyperelliptic : ComponentTag::NonHyperelliptic;
            return rep;
        }
        const int hyp_parity = ((g + 1) / 2) % 2;
        if (g == 3) {
            // H(4) and H(2,2): the hyperelliptic component is the even one
            const bool parity_says_hyp = *rep.parity == hyp_parity;
            if (parity_says_hyp != hyp) {
                rep.tag = ComponentTag::HyperellipticOrSpinUndecided;
                rep.note = "involution search and spin parity disagree";
            } else {
                rep.tag = hyp ? ComponentTag::Hyperelliptic : ComponentTag::OddSpin;
            }
            return rep;
        }
        if (hyp) {
            if (*rep.parity != hyp_parity) {
                rep.tag = ComponentTag::HyperellipticOrSpinUndecided;
                rep.note = "hyperelliptic involution found but parity differs from the "
                           "hyperelliptic value";
            } else {
                rep.tag = ComponentTag::Hyperelliptic;
            }
            return rep;
        }
        rep.tag = *rep.parity == 0 ? ComponentTag::EvenSpin : ComponentTag::OddSpin;
        return rep;
    }
    if (all_even && g >= 4) {
        rep.tag = *rep.parity == 0 ? ComponentTag::EvenSpin : ComponentTag::OddSpin;
        return rep;
    }
    rep.tag = ComponentTag::Connected;
    return rep;
}

} // namespace olab

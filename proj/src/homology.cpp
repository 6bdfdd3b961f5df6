#include "olab/homology.hpp"

#include "olab/error.hpp"

#include <queue>
#include <thread>

namespace olab {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

} // namespace

ChainComplexData chain_complex(const Origami& o) {
    const int n = o.degree();
    ChainComplexData cc;
    cc.degree = n;
    cc.vertices = bottom_left_vertices(o);
    cc.boundary2 = IntMatrix(u(2 * n), u(n));
    cc.boundary1 = IntMatrix(u(cc.vertices.count()), u(2 * n));
    for (int i = 0; i < n; ++i) {
        cc.boundary2(u(i), u(i)) += 1;
        cc.boundary2(u(n + o.h()(i)), u(i)) += 1;
        cc.boundary2(u(o.v()(i)), u(i)) -= 1;
        cc.boundary2(u(n + i), u(i)) -= 1;

        const int here = cc.vertices.of_square[u(i)];
        cc.boundary1(u(cc.vertices.of_square[u(o.h()(i))]), u(i)) += 1;
        cc.boundary1(u(here), u(i)) -= 1;
        cc.boundary1(u(cc.vertices.of_square[u(o.v()(i))]), u(n + i)) += 1;
        cc.boundary1(u(here), u(n + i)) -= 1;
    }
    IntMatrix zero = cc.boundary1 * cc.boundary2;
    OLAB_ASSERT(zero == IntMatrix(zero.rows(), zero.cols()), "boundary of boundary vanishes");
    return cc;
}

bool is_cycle(const ChainComplexData& cc, const Chain& c) {
    if (c.size() != cc.boundary1.cols())
        throw DomainError("chain has the wrong length");
    for (const auto& x : cc.boundary1 * c)
        if (x != 0)
            return false;
    return true;
}

Integer dual_pairing(const Origami& o, const Chain& dual, const Chain& primal) {
    const int n = o.degree();
    if (dual.size() != u(2 * n) || primal.size() != u(2 * n))
        throw DomainError("chain has the wrong length");
    // a right step from s crosses ζ_h(s) upward-positively; an up step from s
    // crosses σ_v(s)
    Integer total = 0;
    for (int s = 0; s < n; ++s) {
        total += dual[u(s)] * primal[u(n + o.h()(s))];
        total -= dual[u(n + s)] * primal[u(o.v()(s))];
    }
    return total;
}

HomologyBasis::HomologyBasis(const Origami& o)
    : degree_(o.degree()), origami_(o), cc_(chain_complex(o)) {
    const int n = degree_;
    const int edges = 2 * n;

    // spanning tree of the dual graph (square centres, right/up edges)
    std::vector<int> tree_edge(u(n), -1); // dual edge reaching each square
    std::vector<char> in_tree(u(edges), 0);
    std::vector<Chain> path(u(n)); // root -> square
    std::vector<char> seen(u(n), 0);
    path[0] = Chain(u(edges), 0);
    seen[0] = 1;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        const int s = q.front();
        q.pop();
        const std::array<std::tuple<int, int, int>, 4> moves{{
            {o.h()(s), s, +1},             // right along R_s
            {o.v()(s), n + s, +1},         // up along U_s
            {o.h_inv()(s), o.h_inv()(s), -1}, // left against R_{h⁻¹s}
            {o.v_inv()(s), n + o.v_inv()(s), -1},
        }};
        for (const auto& [t, e, sign] : moves) {
            if (seen[u(t)])
                continue;
            seen[u(t)] = 1;
            in_tree[u(e)] = 1;
            tree_edge[u(t)] = e;
            path[u(t)] = path[u(s)];
            path[u(t)][u(e)] += sign;
            q.push(t);
        }
    }

    std::vector<int> non_tree;
    std::vector<Chain> fundamental;
    for (int e = 0; e < edges; ++e) {
        if (in_tree[u(e)])
            continue;
        const int from = e < n ? e : e - n;
        const int to = e < n ? o.h()(from) : o.v()(from);
        Chain c = path[u(from)];
        c[u(e)] += 1;
        for (int k = 0; k < edges; ++k)
            c[u(k)] -= path[u(to)][u(k)];
        non_tree.push_back(e);
        fundamental.push_back(std::move(c));
    }
    const std::size_t m = fundamental.size();
    OLAB_ASSERT(m == u(n + 1), "dual cycle space has rank N+1");

    // loops around each vertex, counterclockwise
    const int nv = cc_.vertices.count();
    IntMatrix loops(u(nv), m);
    std::vector<char> vertex_done(u(nv), 0);
    for (int s0 = 0; s0 < n; ++s0) {
        const int vid = cc_.vertices.of_square[u(s0)];
        if (vertex_done[u(vid)])
            continue;
        vertex_done[u(vid)] = 1;
        Chain c(u(edges), 0);
        int s = s0;
        do {
            const int b = o.h_inv()(s);
            const int cc = o.v_inv()(b);
            const int d = o.h()(cc);
            c[u(b)] -= 1;      // s -> b, leftward
            c[u(n + cc)] -= 1; // b -> cc, downward
            c[u(cc)] += 1;     // cc -> d, rightward
            c[u(n + d)] += 1;  // d -> v(d), upward
            s = o.v()(d);
        } while (s != s0);
        for (std::size_t j = 0; j < m; ++j)
            loops(u(vid), j) = c[u(non_tree[j])];
    }

    SmithForm snf = smith_normal_form(loops);
    OLAB_ASSERT(snf.rank == u(nv - 1), "vertex loops span a corank-one lattice");
    for (std::size_t i = 0; i < snf.rank; ++i)
        OLAB_ASSERT(snf.diagonal(i, i) == 1, "homology is torsion-free");
    const IntMatrix w = unimodular_inverse(snf.right);
    for (std::size_t k = snf.rank; k < m; ++k) {
        Chain c(u(edges), 0);
        for (std::size_t j = 0; j < m; ++j) {
            if (w(k, j) == 0)
                continue;
            for (int e = 0; e < edges; ++e)
                c[u(e)] += w(k, j) * fundamental[j][u(e)];
        }
        OLAB_ASSERT(is_cycle(cc_, c), "basis chain is a cycle");
        cycles_.push_back(std::move(c));
    }

    const std::size_t r = cycles_.size();
    J_ = IntMatrix(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            J_(i, j) = dual_pairing(o, cycles_[i], cycles_[j]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            OLAB_ASSERT(J_(i, j) == -J_(j, i), "intersection matrix is skew");
    OLAB_ASSERT(determinant(J_) == 1, "intersection matrix is unimodular");
    J_inv_ = unimodular_inverse(J_);

    Chain sig(u(edges), 0), zet(u(edges), 0);
    for (int i = 0; i < n; ++i) {
        sig[u(i)] = 1;
        zet[u(n + i)] = 1;
    }
    sigma_sum_ = coordinates(sig);
    zeta_sum_ = coordinates(zet);
}

IntVector HomologyBasis::coordinates(const Chain& c) const {
    if (!is_cycle(cc_, c))
        throw DomainError("chain is not a cycle");
    IntVector pairings(cycles_.size());
    for (std::size_t i = 0; i < cycles_.size(); ++i)
        pairings[i] = dual_pairing(origami_, cycles_[i], c);
    return J_inv_ * pairings;
}

Chain HomologyBasis::chain_of(const IntVector& coords) const {
    if (coords.size() != cycles_.size())
        throw DomainError("coordinate vector has the wrong length");
    Chain c(u(2 * degree_), 0);
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0)
            for (std::size_t e = 0; e < c.size(); ++e)
                c[e] += coords[k] * cycles_[k][e];
    return c;
}

Integer HomologyBasis::pairing(const IntVector& x, const IntVector& y) const {
    Integer total = 0;
    const IntVector jy = J_ * y;
    for (std::size_t i = 0; i < x.size(); ++i)
        total += x[i] * jy[i];
    return total;
}

std::pair<Integer, Integer> HomologyBasis::holonomy(const IntVector& coords) const {
    const Chain c = chain_of(coords);
    Integer x = 0, y = 0;
    for (int i = 0; i < degree_; ++i) {
        x += c[u(i)];
        y += c[u(degree_ + i)];
    }
    return {x, y};
}

HomologyBasis h1_basis(const Origami& o) { return HomologyBasis(o); }

Integer intersection_pairing(const Origami& o, const Chain& x, const Chain& y) {
    const HomologyBasis b(o);
    return b.pairing(b.coordinates(x), b.coordinates(y));
}

TautologicalSplit tautological_split(const HomologyBasis& b) {
    const std::size_t r = u(b.rank());
    TautologicalSplit out;
    out.st = IntMatrix(r, 2);
    out.st.set_column(0, b.sigma_sum());
    out.st.set_column(1, b.zeta_sum());
    IntMatrix hol(2, r);
    for (std::size_t k = 0; k < r; ++k) {
        IntVector e(r, 0);
        e[k] = 1;
        auto [x, y] = b.holonomy(e);
        hol(0, k) = x;
        hol(1, k) = y;
    }
    out.zero = integer_kernel(hol);
    OLAB_ASSERT(out.zero.cols() + 2 == r || (r == 2 && out.zero.cols() == 0),
                "zero-holonomy lattice has rank 2g-2");
    return out;
}

TautologicalSplit tautological_split(const Origami& o) { return tautological_split(HomologyBasis(o)); }

std::vector<Chain> letter_chain_map(const Origami& o, Letter l) {
    const int n = o.degree();
    std::vector<Chain> img(u(2 * n), Chain(u(2 * n), 0));
    for (int i = 0; i < n; ++i) {
        Chain& sig = img[u(i)];
        Chain& zet = img[u(n + i)];
        switch (l) {
        case Letter::T:
            sig[u(i)] += 1;
            zet[u(i)] += 1;
            zet[u(n + o.h()(i))] += 1;
            break;
        case Letter::S:
            zet[u(n + i)] += 1;
            sig[u(n + i)] += 1;
            sig[u(o.v()(i))] += 1;
            break;
        case Letter::Tinv:
            sig[u(i)] += 1;
            zet[u(n + o.h_inv()(i))] += 1;
            zet[u(o.h_inv()(i))] -= 1;
            break;
        case Letter::Sinv:
            zet[u(n + i)] += 1;
            sig[u(o.v_inv()(i))] += 1;
            sig[u(n + o.v_inv()(i))] -= 1;
            break;
        }
    }
    return img;
}

namespace {

int face_image(const Origami& o, Letter l, int i) {
    switch (l) {
    case Letter::T:
        return o.h()(i);
    case Letter::S:
        return o.v()(i);
    case Letter::Tinv:
        return o.h_inv()(i);
    case Letter::Sinv:
        return o.v_inv()(i);
    }
    return i;
}

// Chain map into the canonical target: letter map followed by relabelling.
std::vector<Chain> relabeled_chain_map(const Origami& o, Letter l, const Permutation& r) {
    const int n = o.degree();
    std::vector<Chain> raw = letter_chain_map(o, l);
    std::vector<Chain> out(raw.size(), Chain(u(2 * n), 0));
    for (std::size_t e = 0; e < raw.size(); ++e)
        for (int j = 0; j < n; ++j) {
            out[e][u(r(j))] = raw[e][u(j)];
            out[e][u(n + r(j))] = raw[e][u(n + j)];
        }
    return out;
}

Chain apply_chain_map(const std::vector<Chain>& f, const Chain& c) {
    Chain out(f.empty() ? 0 : f.front().size(), 0);
    for (std::size_t e = 0; e < c.size(); ++e)
        if (c[e] != 0)
            for (std::size_t k = 0; k < out.size(); ++k)
                out[k] += c[e] * f[e][k];
    return out;
}

IntMatrix step_in_bases(const Origami& src, Letter l, const Permutation& relabel,
                        const Origami& dst, const HomologyBasis& bs, const HomologyBasis& bd) {
    const int n = src.degree();
    const auto f = relabeled_chain_map(src, l, relabel);
    // chain-map law against the target's boundary
    const ChainComplexData& cd = bd.complex();
    for (int i = 0; i < n; ++i) {
        const Chain lhs = apply_chain_map(f, bs.complex().boundary2.column(u(i)));
        const Chain rhs = cd.boundary2.column(u(relabel(face_image(src, l, i))));
        OLAB_ASSERT(lhs == rhs, "chain map commutes with the boundary");
    }
    (void)dst;
    IntMatrix m(u(bd.rank()), u(bs.rank()));
    for (int k = 0; k < bs.rank(); ++k) {
        const Chain image = apply_chain_map(f, bs.cycles()[u(k)]);
        OLAB_ASSERT(is_cycle(cd, image), "cycles map to cycles");
        m.set_column(u(k), bd.coordinates(image));
    }
    OLAB_ASSERT(is_symplectic(m, bs.intersection(), bd.intersection()), "step matrix is symplectic");
    return m;
}

} // namespace

bool is_symplectic(const IntMatrix& m, const IntMatrix& j_source, const IntMatrix& j_target) {
    return m.transpose() * j_target * m == j_source;
}

CocycleMatrix step_matrix(const Origami& o, Letter l) {
    const SlStep s = apply_letter(o, l);
    const HomologyBasis bs(o), bd(s.canonical);
    CocycleMatrix out;
    out.matrix = step_in_bases(o, l, s.relabel, s.canonical, bs, bd);
    out.word = Sl2zWord({l});
    out.source = 0;
    out.target = 0;
    return out;
}

IntMatrix automorphism_matrix(const HomologyBasis& b, const Permutation& tau) {
    const int n = b.degree();
    if (tau.degree() != n)
        throw DomainError("automorphism has the wrong degree");
    IntMatrix m(u(b.rank()), u(b.rank()));
    for (int k = 0; k < b.rank(); ++k) {
        const Chain& c = b.cycles()[u(k)];
        Chain img(c.size(), 0);
        for (int j = 0; j < n; ++j) {
            img[u(tau(j))] = c[u(j)];
            img[u(n + tau(j))] = c[u(n + j)];
        }
        m.set_column(u(k), b.coordinates(img));
    }
    return m;
}

KzCocycle::KzCocycle(const Origami& o, int threads) : graph_(sl2z_orbit(o, threads)) {
    const std::size_t n = u(graph_.size());
    bases_.resize(n);
    steps_.resize(n);
    const std::size_t nthreads = threads > 1 ? std::min<std::size_t>(u(threads), n) : 1;
    auto run = [&](auto&& body) {
        if (nthreads <= 1) {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += nthreads)
                    body(i);
            });
        for (auto& th : pool)
            th.join();
    };
    run([&](std::size_t i) { bases_[i] = HomologyBasis(graph_.nodes[i]); });
    run([&](std::size_t i) {
        for (Letter l : kLetters) {
            const auto& e = graph_.edges[i][u(index(l))];
            steps_[i][u(index(l))] = step_in_bases(graph_.nodes[i], l, e.relabel,
                                                   graph_.nodes[u(e.target)], bases_[i],
                                                   bases_[u(e.target)]);
        }
    });
}

IntMatrix KzCocycle::word_matrix(int node, const Sl2zWord& w, int* end) const {
    IntMatrix m = IntMatrix::identity(u(basis(node).rank()));
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        m = step(node, *it) * m;
        node = graph_.step(node, *it);
    }
    if (end)
        *end = node;
    return m;
}

std::vector<IntMatrix> KzCocycle::automorphism_matrices(int node) const {
    std::vector<IntMatrix> out;
    for (const auto& tau : automorphisms(graph_.nodes[u(node)]))
        if (!tau.is_identity())
            out.push_back(automorphism_matrix(basis(node), tau));
    return out;
}

CocycleMatrix KzCocycle::kz_matrix(const Sl2zWord& w) const {
    int end = 0;
    CocycleMatrix out;
    out.matrix = word_matrix(basepoint(), w, &end);
    if (end != basepoint())
        throw DomainError("word " + w.to_string() + " does not return to the basepoint");
    out.source = out.target = basepoint();
    out.word = w;
    out.ambiguity = automorphism_matrices(basepoint());
    return out;
}

CocycleMatrix kz_matrix(const Origami& o, const Sl2zWord& w) { return KzCocycle(o).kz_matrix(w); }

IntMatrix restrict(const IntMatrix& m, const IntMatrix& sub_source, const IntMatrix& sub_target) {
    const RatMatrix target = to_rational(sub_target);
    const IntMatrix image = m * sub_source;
    IntMatrix out(sub_target.cols(), sub_source.cols());
    for (std::size_t k = 0; k < sub_source.cols(); ++k) {
        const IntVector col = image.column(k);
        std::vector<Rational> rhs(col.begin(), col.end());
        auto x = solve_full_column_rank(target, rhs);
        if (!x)
            throw DomainError("restrict: subspace is not invariant");
        for (std::size_t i = 0; i < x->size(); ++i) {
            if ((*x)[i].get_den() != 1)
                throw DomainError("restrict: image is not in the target lattice");
            out(i, k) = (*x)[i].get_num();
        }
    }
    return out;
}

IntMatrix restrict(const IntMatrix& m, const IntMatrix& sub) { return restrict(m, sub, sub); }

IntMatrix restrict(const CocycleMatrix& m, const IntMatrix& sub) { return restrict(m.matrix, sub, sub); }

IntMatrix restricted_form(const IntMatrix& j, const IntMatrix& sub) { return sub.transpose() * j * sub; }

IntMatrix isotypical_W(const HomologyBasis& b, const Origami& o, const Permutation& tau) {
    if (tau.degree() != o.degree() || compose(tau, o.h()) != compose(o.h(), tau) ||
        compose(tau, o.v()) != compose(o.v(), tau))
        throw DomainError("isotypical_W: not an automorphism");
    if (!compose(tau, tau).is_identity())
        throw DomainError("isotypical_W: automorphism is not an involution");
    IntMatrix m = automorphism_matrix(b, tau);
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, i) += 1;
    return integer_kernel(m);
}

IntMatrix isotypical_W(const Origami& o, const Permutation& tau) {
    return isotypical_W(HomologyBasis(o), o, tau);
}

RatMatrix unipotent_log(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("unipotent_log: non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix x = m - RatMatrix::identity(n);
    RatMatrix out(n, n);
    RatMatrix power = x;
    for (std::size_t k = 1; k <= n; ++k) {
        const Rational coef = Rational(k % 2 == 1 ? 1 : -1, static_cast<unsigned long>(k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += coef * power(i, j);
        power = power * x;
    }
    if (!(power == RatMatrix(n, n)))
        throw DomainError("unipotent_log: matrix is not unipotent");
    return out;
}

RatMatrix matrix_exp_nilpotent(const RatMatrix& x) {
    const std::size_t n = x.rows();
    RatMatrix out = RatMatrix::identity(n);
    RatMatrix term = RatMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        term = term * x;
        const Rational inv = Rational(1, static_cast<unsigned long>(k));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                term(i, j) *= inv;
        out = out + term;
    }
    if (!(term * x == RatMatrix(n, n)))
        throw DomainError("matrix_exp_nilpotent: matrix is not nilpotent");
    return out;
}

namespace {

// Incremental row-reduced span of flattened matrices.
class Span {
  public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    bool add(const RatMatrix& m) {
        std::vector<Rational> v(dim_);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                v[i * m.cols() + j] = m(i, j);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational f = v[pivots_[r]];
            if (f != 0)
                for (std::size_t k = 0; k < dim_; ++k)
                    v[k] -= f * rows_[r][k];
        }
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0)
            ++p;
        if (p == dim_)
            return false;
        const Rational inv = 1 / v[p];
        for (auto& x : v)
            x *= inv;
        for (auto& row : rows_) {
            const Rational f = row[p];
            if (f != 0)
                for (std::size_t k = 0; k < dim_; ++k)
                    row[k] -= f * v[k];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    std::size_t size() const { return rows_.size(); }

  private:
    std::size_t dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace

int lie_algebra_dim(const std::vector<RatMatrix>& gens) {
    if (gens.empty())
        return 0;
    const std::size_t n = gens.front().rows();
    for (const auto& g : gens)
        if (g.rows() != n || g.cols() != n)
            throw DomainError("lie_algebra_dim: matrices of different shapes");
    Span span(n * n);
    std::vector<RatMatrix> basis;
    std::vector<RatMatrix> pending;
    for (const auto& g : gens)
        if (span.add(g)) {
            basis.push_back(g);
            pending.push_back(g);
        }
    while (!pending.empty()) {
        RatMatrix x = pending.back();
        pending.pop_back();
        const std::size_t count = basis.size();
        for (std::size_t k = 0; k < count; ++k) {
            RatMatrix br = x * basis[k] - basis[k] * x;
            if (span.add(br)) {
                basis.push_back(br);
                pending.push_back(br);
            }
        }
    }
    return static_cast<int>(span.size());
}

} // namespace olab

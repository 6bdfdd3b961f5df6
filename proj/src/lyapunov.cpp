#include "olab/lyapunov.hpp"

#include "olab/error.hpp"
#include "olab/homology.hpp"
#include "olab/orbit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>

namespace olab {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Rational ekz_combinatorial(const Stratum& s) {
    Rational sum = 0;
    for (int k : s.orders)
        sum += Rational(k * (k + 2), k + 1);
    sum /= 12;
    sum.canonicalize();
    return sum;
}

EkzReport ekz_sum(const Origami& o, int threads) {
    if (!is_reduced(o))
        throw DomainError("EKZ evaluation needs a reduced origami");
    const OrbitGraph g = sl2z_orbit(o, threads);
    EkzReport r;
    r.stratum = stratum(o);
    r.orbit_size = g.size();
    r.combinatorial = ekz_combinatorial(r.stratum);
    Rational cyl = 0;
    for (const auto& node : g.nodes)
        for (const auto& c : node.h().cycles())
            cyl += Rational(1, static_cast<long>(c.size()));
    cyl /= g.size();
    cyl.canonicalize();
    r.cylinder = cyl;
    r.total = r.combinatorial + r.cylinder;
    r.total.canonicalize();
    OLAB_ASSERT(r.total >= 1, "EKZ total includes the tautological exponent");
    return r;
}

Rational remaining_exponent(const Rational& total, const Rational& known, int multiplicity) {
    if (multiplicity <= 0)
        throw DomainError("multiplicity must be positive");
    Rational out = (total - known) / multiplicity;
    out.canonicalize();
    return out;
}

json to_json(const EkzReport& r) {
    return {{"stratum", r.stratum.to_string()},
            {"genus", r.stratum.genus},
            {"orbit", r.orbit_size},
            {"combinatorial", to_json(r.combinatorial)},
            {"cylinder", to_json(r.cylinder)},
            {"total", to_json(r.total)}};
}

std::string to_string(Subspace s) {
    switch (s) {
    case Subspace::Full:
        return "full";
    case Subspace::H1Zero:
        return "h1_zero";
    case Subspace::W:
        return "w";
    }
    return "?";
}

Subspace parse_subspace(std::string_view text) {
    if (text == "full")
        return Subspace::Full;
    if (text == "h1_zero")
        return Subspace::H1Zero;
    if (text == "w")
        return Subspace::W;
    throw ParseError("unknown subspace '" + std::string(text) + "' (expected full, h1_zero or w)");
}

Permutation central_involution(const Origami& o) {
    const auto aut = automorphisms(o);
    std::optional<Permutation> found;
    for (const auto& t : aut) {
        if (t.is_identity() || !compose(t, t).is_identity())
            continue;
        const bool central = std::all_of(aut.begin(), aut.end(), [&](const Permutation& a) {
            return compose(a, t) == compose(t, a);
        });
        if (!central)
            continue;
        if (found)
            throw DomainError("more than one central involution");
        found = t;
    }
    if (!found)
        throw DomainError("no central involution among the automorphisms");
    return *found;
}

namespace {

using Dense = Eigen::MatrixXd;

Dense to_dense(const IntMatrix& m) {
    Dense out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

struct Walk {
    int basepoint = 0;
    int dim = 0;
    std::vector<std::array<int, 4>> next;
    std::vector<std::array<Dense, 4>> steps;
};

// Accumulates log |R_ii| into `logs` and leaves q orthonormal.
void renormalize(Dense& q, std::vector<double>& logs) {
    Eigen::HouseholderQR<Dense> qr(q);
    const Dense r = qr.matrixQR().triangularView<Eigen::Upper>();
    const Eigen::Index d = q.cols();
    q = qr.householderQ() * Dense::Identity(q.rows(), d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double rii = r(i, i);
        logs[u(static_cast<int>(i))] += std::log(std::abs(rii));
        if (rii < 0)
            q.col(i) = -q.col(i);
    }
}

std::vector<double> run_trial(const Walk& w, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Dense q(w.dim, w.dim);
    for (Eigen::Index i = 0; i < q.rows(); ++i)
        for (Eigen::Index j = 0; j < q.cols(); ++j)
            q(i, j) = gauss(rng);
    {
        std::vector<double> discard(u(w.dim), 0.0);
        renormalize(q, discard);
    }
    std::vector<double> logs(u(w.dim), 0.0);
    int node = w.basepoint;
    for (int s = 1; s <= steps; ++s) {
        const std::size_t l = static_cast<std::size_t>(rng() % 4);
        q = w.steps[u(node)][l] * q;
        node = w.next[u(node)][l];
        if (s % 20 == 0 || s == steps)
            renormalize(q, logs);
    }
    for (auto& x : logs)
        x /= steps;
    std::sort(logs.begin(), logs.end(), std::greater<>());
    return logs;
}

} // namespace

McEstimate mc_exponents(const Origami& o, Subspace subspace, int steps, int trials,
                        std::uint64_t seed, int threads) {
    if (steps < 1 || trials < 1)
        throw DomainError("steps and trials must be positive");
    if (!is_reduced(o))
        throw DomainError("Lyapunov estimates need a reduced origami");
    const KzCocycle kz(o, threads);
    const auto& g = kz.graph();

    std::vector<IntMatrix> sub(u(g.size()));
    for (int n = 0; n < g.size(); ++n) {
        const HomologyBasis& b = kz.basis(n);
        switch (subspace) {
        case Subspace::Full:
            sub[u(n)] = IntMatrix::identity(u(b.rank()));
            break;
        case Subspace::H1Zero:
            sub[u(n)] = tautological_split(b).zero;
            break;
        case Subspace::W:
            sub[u(n)] = isotypical_W(b, g.nodes[u(n)], central_involution(g.nodes[u(n)]));
            break;
        }
    }

    Walk w;
    w.basepoint = g.basepoint;
    w.dim = static_cast<int>(sub[u(g.basepoint)].cols());
    w.next.resize(u(g.size()));
    w.steps.resize(u(g.size()));
    for (int n = 0; n < g.size(); ++n)
        for (Letter l : kLetters) {
            const int t = g.step(n, l);
            w.next[u(n)][u(index(l))] = t;
            w.steps[u(n)][u(index(l))] =
                to_dense(restrict(kz.step(n, l), sub[u(n)], sub[u(t)]));
        }

    McEstimate est;
    est.steps = steps;
    est.trials = trials;
    est.seed = seed;
    est.subspace = subspace;
    if (automorphisms(o).size() > 1)
        est.note = "nontrivial automorphisms: cocycle defined up to their action";
    if (w.dim == 0)
        return est;

    std::vector<std::vector<double>> results(u(trials));
    auto work = [&](int first, int stride) {
        for (int t = first; t < trials; t += stride)
            results[u(t)] = run_trial(w, steps, splitmix64(seed + static_cast<std::uint64_t>(t)));
    };
    const int workers = std::clamp(threads, 1, trials);
    if (workers > 1) {
        std::vector<std::thread> pool;
        for (int k = 0; k < workers; ++k)
            pool.emplace_back(work, k, workers);
        for (auto& th : pool)
            th.join();
    } else {
        work(0, 1);
    }

    est.exponents.assign(u(w.dim), 0.0);
    est.std_errors.assign(u(w.dim), 0.0);
    for (const auto& r : results)
        for (int i = 0; i < w.dim; ++i)
            est.exponents[u(i)] += r[u(i)];
    for (auto& x : est.exponents)
        x /= trials;
    if (trials > 1) {
        for (int i = 0; i < w.dim; ++i) {
            double var = 0;
            for (const auto& r : results)
                var += (r[u(i)] - est.exponents[u(i)]) * (r[u(i)] - est.exponents[u(i)]);
            var /= trials - 1;
            est.std_errors[u(i)] = std::sqrt(var / trials);
        }
    }
    return est;
}

bool is_symmetric(const McEstimate& e, double sigmas, double floor) {
    const std::size_t d = e.exponents.size();
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = d - 1 - i;
        const double tol =
            sigmas * std::hypot(e.std_errors[i], e.std_errors[j]) + floor;
        if (std::abs(e.exponents[i] + e.exponents[j]) > tol)
            return false;
    }
    return true;
}

json to_json(const McEstimate& e) {
    return {{"subspace", to_string(e.subspace)},
            {"steps", e.steps},
            {"trials", e.trials},
            {"seed", e.seed},
            {"exponents", e.exponents},
            {"std_errors", e.std_errors},
            {"note", e.note}};
}

} // namespace olab

#include "olab/simplicity.hpp"

#include "olab/error.hpp"
#include "olab/orbit.hpp"

#include <array>
#include <queue>
#include <thread>

namespace olab {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Chain cylinder_chain(const Origami& o, const std::vector<int>& cycle) {
    Chain c(u(2 * o.degree()), 0);
    for (int s : cycle)
        c[u(s)] += 1;
    return c;
}

std::vector<IntVector> cylinder_classes(const Origami& o, const HomologyBasis& b) {
    std::vector<IntVector> out;
    for (const auto& cyc : o.h().cycles())
        out.push_back(b.coordinates(cylinder_chain(o, cyc)));
    return out;
}

int span_rank(const std::vector<IntVector>& vs, std::size_t dim) {
    if (vs.empty())
        return 0;
    return static_cast<int>(rank(hstack(vs, dim)));
}

bool pairwise_isotropic(const HomologyBasis& b, const std::vector<IntVector>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (b.pairing(vs[i], vs[j]) != 0)
                return false;
    return true;
}

// Images of a word at the basepoint, restricted to H1_zero there.
struct ZeroFrame {
    IntMatrix zero; // H1_zero basis in h1 coordinates
    IntMatrix form; // restricted intersection form
};

ZeroFrame zero_frame(const HomologyBasis& b) {
    ZeroFrame f;
    f.zero = tautological_split(b).zero;
    f.form = restricted_form(b.intersection(), f.zero);
    return f;
}

// rank of m − Id and isotropy of its image under `form`
std::pair<int, bool> unipotent_image(const IntMatrix& m, const IntMatrix& form) {
    const IntMatrix d = m - IntMatrix::identity(m.rows());
    const int r = static_cast<int>(rank(d));
    const IntMatrix gram = d.transpose() * form * d;
    bool iso = true;
    for (std::size_t i = 0; i < gram.rows() && iso; ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j)
            if (gram(i, j) != 0) {
                iso = false;
                break;
            }
    return {r, iso};
}

bool unipotent_acceptable(int rank, bool isotropic, int genus) {
    if (rank == 0)
        return false;
    return rank != genus - 1 || !isotropic;
}

bool cylinder_acceptable(int dim, int genus) { return 1 < dim && dim < genus; }

using M4 = std::array<std::int64_t, 16>;

bool mul4(const M4& x, const M4& y, M4& out) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < 4; ++k) {
                std::int64_t p;
                if (__builtin_mul_overflow(x[u(4 * i + k)], y[u(4 * k + j)], &p) ||
                    __builtin_add_overflow(acc, p, &acc))
                    return false;
            }
            out[u(4 * i + j)] = acc;
        }
    return true;
}

M4 to_m4(const IntMatrix& m) {
    M4 out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            OLAB_ASSERT(m(i, j).fits_slong_p(), "restricted step matrix fits in 64 bits");
            out[4 * i + j] = m(i, j).get_si();
        }
    return out;
}

IntMatrix from_m4(const M4& m) {
    IntMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            out(i, j) = static_cast<long>(m[4 * i + j]);
    return out;
}

// Depth-first enumeration of loops at the basepoint, building words from the
// left: the leftmost letter is applied last, so its source is found by
// stepping backwards from the current node.
class LoopSearch {
  public:
    LoopSearch(const KzCocycle& kz, const IntMatrix& form) : kz_(kz), form_(form) {
        const auto& g = kz.graph();
        std::vector<IntMatrix> zero(u(g.size()));
        for (int n = 0; n < g.size(); ++n)
            zero[u(n)] = tautological_split(kz.basis(n)).zero;
        steps_.resize(u(g.size()));
        for (int n = 0; n < g.size(); ++n)
            for (Letter l : kLetters)
                steps_[u(n)][u(index(l))] =
                    to_m4(restrict(kz.step(n, l), zero[u(n)], zero[u(g.step(n, l))]));
        dist_.assign(u(g.size()), -1);
        std::queue<int> q;
        dist_[u(g.basepoint)] = 0;
        q.push(g.basepoint);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (Letter l : kLetters) {
                const int y = g.step(x, l);
                if (dist_[u(y)] < 0) {
                    dist_[u(y)] = dist_[u(x)] + 1;
                    q.push(y);
                }
            }
        }
    }

    struct Hit {
        std::vector<Letter> word;
        IntMatrix matrix;
        PinchingReport report;
    };

    // First pinching loop of exactly `length` letters starting with `first`.
    std::optional<Hit> run(int length, Letter first, std::uint64_t& checked) {
        length_ = length;
        checked_ = 0;
        word_.assign(u(length), Letter::T);
        hit_.reset();
        const int base = kz_.graph().basepoint;
        M4 id{};
        for (int i = 0; i < 4; ++i)
            id[u(5 * i)] = 1;
        descend(0, first, base, id);
        checked = checked_;
        return std::move(hit_);
    }

  private:
    void descend(int pos, Letter l, int target, const M4& prefix) {
        const auto& g = kz_.graph();
        const int source = g.step(target, inverse(l));
        const int remaining = length_ - pos - 1;
        if (dist_[u(source)] > remaining)
            return;
        M4 m;
        if (!mul4(prefix, steps_[u(source)][u(index(l))], m))
            return;
        word_[u(pos)] = l;
        if (remaining == 0) {
            if (source == g.basepoint)
                check(m);
            return;
        }
        for (Letter next : kLetters) {
            if (next == inverse(l))
                continue;
            descend(pos + 1, next, source, m);
            if (hit_)
                return;
        }
    }

    void check(const M4& m) {
        ++checked_;
        const IntMatrix mat = from_m4(m);
        PinchingReport rep = is_galois_pinching_sp4(mat, form_);
        if (rep.pinching)
            hit_ = Hit{word_, mat, std::move(rep)};
    }

    const KzCocycle& kz_;
    IntMatrix form_;
    std::vector<std::array<M4, 4>> steps_;
    std::vector<int> dist_;
    int length_ = 0;
    std::vector<Letter> word_;
    std::optional<Hit> hit_;
    std::uint64_t checked_ = 0;
};

void require_searchable(const Origami& o) {
    if (genus(o) != 3)
        throw DomainError("simplicity certificates need genus 3, got genus " +
                          std::to_string(genus(o)));
    if (automorphisms(o).size() != 1)
        throw DomainError("simplicity certificates need trivial automorphisms");
    if (!is_reduced(o))
        throw DomainError("simplicity certificates need a reduced origami");
}

std::optional<CylinderWitness> find_cylinder_witness(const KzCocycle& kz, int g) {
    const auto& graph = kz.graph();
    const auto words = graph.tree_words();
    for (int n = 0; n < graph.size(); ++n) {
        const auto classes = cylinder_classes(graph.nodes[u(n)], kz.basis(n));
        const int dim = span_rank(classes, u(kz.basis(n).rank()));
        if (cylinder_acceptable(dim, g) && pairwise_isotropic(kz.basis(n), classes))
            return CylinderWitness{words[u(n)], dim, g};
    }
    return std::nullopt;
}

std::optional<UnipotentWitness> find_unipotent_witness(const KzCocycle& kz, const ZeroFrame& f,
                                                       int g) {
    const auto& graph = kz.graph();
    const auto words = graph.tree_words();
    for (int n = 0; n < graph.size(); ++n)
        for (Direction d : {Direction::Horizontal, Direction::Vertical}) {
            const Sl2zWord p = parabolic_word(graph.nodes[u(n)], d);
            const Sl2zWord loop = words[u(n)].inverse() * p * words[u(n)];
            const IntMatrix m = restrict(kz.kz_matrix(loop), f.zero);
            const auto [r, iso] = unipotent_image(m, f.form);
            if (unipotent_acceptable(r, iso, g))
                return UnipotentWitness{loop, r, iso};
        }
    return std::nullopt;
}

} // namespace

std::vector<IntVector> horizontal_cylinder_classes(const Origami& o) {
    return cylinder_classes(o, HomologyBasis(o));
}

int cylinder_span_dim(const Origami& o, const Sl2zWord& direction) {
    Origami x = o;
    const auto& ls = direction.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it)
        x = apply_letter_raw(x, *it);
    const HomologyBasis b(x);
    return span_rank(cylinder_classes(x, b), u(b.rank()));
}

Sl2zWord parabolic_word(const Origami& o, Direction d) {
    const Letter l = d == Direction::Horizontal ? Letter::T : Letter::S;
    const Origami start = canonical_form(o).origami;
    Origami x = start;
    // the orbit is finite, so the cyclic subgroup returns within its size
    for (int k = 1;; ++k) {
        x = apply_letter(x, l).canonical;
        if (x == start)
            return power(l, k);
        OLAB_ASSERT(k <= 1000000, "parabolic search terminates");
    }
}

namespace {

std::optional<SimplicityCertificate> complete_certificate(const Origami& o, const KzCocycle& kz,
                                                         const ZeroFrame& frame, Sl2zWord word,
                                                         IntMatrix matrix,
                                                         const ReciprocalQuartic& quartic) {
    const int g = 3;
    SimplicityCertificate cert{o, std::move(word),
                               std::move(matrix), quartic, CylinderWitness{}};
    if (auto w = find_cylinder_witness(kz, g))
        cert.witness = *w;
    else if (auto uw = find_unipotent_witness(kz, frame, g))
        cert.witness = *uw;
    else
        return std::nullopt;
    OLAB_ASSERT(verify_certificate(cert), "emitted certificate verifies");
    return cert;
}

} // namespace

SimplicitySearch certify_simplicity(const Origami& o, int search_depth, int threads) {
    if (search_depth < 1)
        throw DomainError("search depth must be positive");
    require_searchable(o);
    const KzCocycle kz(o, threads);
    const ZeroFrame frame = zero_frame(kz.basis(kz.basepoint()));

    SimplicitySearch result;
    std::optional<LoopSearch::Hit> hit;
    for (int len = 1; len <= search_depth && !hit; ++len) {
        std::array<std::optional<LoopSearch::Hit>, 4> hits;
        std::array<std::uint64_t, 4> counts{};
        auto task = [&](std::size_t k) {
            LoopSearch search(kz, frame.form);
            hits[k] = search.run(len, kLetters[k], counts[k]);
        };
        if (threads > 1) {
            std::vector<std::thread> pool;
            for (std::size_t k = 0; k < 4; ++k)
                pool.emplace_back(task, k);
            for (auto& t : pool)
                t.join();
        } else {
            for (std::size_t k = 0; k < 4; ++k) {
                task(k);
                if (hits[k])
                    break;
            }
        }
        // count as the serial search would, whatever the thread count
        for (std::size_t k = 0; k < 4 && !hit; ++k) {
            result.loops_checked += counts[k];
            hit = std::move(hits[k]);
        }
        result.explored_depth = len;
    }
    if (!hit)
        return result;

    result.certificate =
        complete_certificate(o, kz, frame, Sl2zWord(hit->word), hit->matrix, *hit->report.quartic);
    return result;
}

std::optional<SimplicityCertificate> certify_with_word(const Origami& o, const Sl2zWord& word) {
    require_searchable(o);
    const KzCocycle kz(o);
    const ZeroFrame frame = zero_frame(kz.basis(kz.basepoint()));
    const IntMatrix m = restrict(kz.kz_matrix(word), frame.zero);
    const PinchingReport rep = is_galois_pinching_sp4(m, frame.form);
    if (!rep.pinching)
        return std::nullopt;
    return complete_certificate(o, kz, frame, word, m, *rep.quartic);
}

bool verify_certificate(const SimplicityCertificate& cert) {
    try {
        const Origami& o = cert.origami;
        if (genus(o) != 3 || automorphisms(o).size() != 1 || !is_reduced(o))
            return false;
        const int g = 3;
        const KzCocycle kz(o);
        const ZeroFrame frame = zero_frame(kz.basis(kz.basepoint()));
        const IntMatrix m = restrict(kz.kz_matrix(cert.pinching_word), frame.zero);
        if (!(m == cert.pinching_matrix))
            return false;
        const PinchingReport rep = is_galois_pinching_sp4(m, frame.form);
        if (!rep.pinching || !rep.quartic)
            return false;
        const ReciprocalQuartic& q = *rep.quartic;
        const ReciprocalQuartic& c = cert.quartic;
        if (q.a != c.a || q.b != c.b || q.delta1 != c.delta1 || q.delta2 != c.delta2 ||
            q.delta3 != c.delta3 || q.t != c.t || q.d != c.d)
            return false;
        if (const auto* cw = std::get_if<CylinderWitness>(&cert.witness)) {
            if (cw->genus != g)
                return false;
            Origami x = o;
            const auto& ls = cw->direction.letters();
            for (auto it = ls.rbegin(); it != ls.rend(); ++it)
                x = apply_letter_raw(x, *it);
            const HomologyBasis b(x);
            const auto classes = cylinder_classes(x, b);
            const int dim = span_rank(classes, u(b.rank()));
            return dim == cw->dim && cylinder_acceptable(dim, g) && pairwise_isotropic(b, classes);
        }
        const auto& uw = std::get<UnipotentWitness>(cert.witness);
        const IntMatrix bm = restrict(kz.kz_matrix(uw.word), frame.zero);
        const RatMatrix diff = to_rational(bm - IntMatrix::identity(4));
        // B must be unipotent
        RatMatrix p = diff;
        for (int k = 1; k < 4; ++k)
            p = p * diff;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (p(i, j) != 0)
                    return false;
        const auto [r, iso] = unipotent_image(bm, frame.form);
        return r == uw.rank && iso == uw.isotropic && unipotent_acceptable(r, iso, g);
    } catch (const Error&) {
        return false;
    }
}

json to_json(const SimplicityCertificate& cert) {
    json j;
    j["origami"] = to_json(cert.origami);
    j["pinching_word"] = cert.pinching_word.to_string();
    j["pinching_matrix"] = to_json(cert.pinching_matrix);
    const auto& q = cert.quartic;
    j["quartic"] = {{"a", q.a.get_str()},          {"b", q.b.get_str()},
                    {"delta1", q.delta1.get_str()}, {"delta2", q.delta2.get_str()},
                    {"delta3", q.delta3.get_str()}, {"t", q.t.get_str()},
                    {"d", q.d.get_str()}};
    if (const auto* cw = std::get_if<CylinderWitness>(&cert.witness)) {
        j["witness"] = {{"kind", "cylinder"},
                        {"direction", cw->direction.to_string()},
                        {"dim", cw->dim},
                        {"genus", cw->genus}};
    } else {
        const auto& uw = std::get<UnipotentWitness>(cert.witness);
        j["witness"] = {{"kind", "unipotent"},
                        {"word", uw.word.to_string()},
                        {"rank", uw.rank},
                        {"isotropic", uw.isotropic}};
    }
    return j;
}

namespace {

Integer integer_field(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_number_integer())
        return Integer(v.get<long>());
    Integer out;
    if (!v.is_string() || out.set_str(v.get<std::string>(), 10) != 0)
        throw ParseError(std::string("certificate field '") + key + "' is not an integer");
    return out;
}

} // namespace

SimplicityCertificate certificate_from_json(const json& j) {
    try {
        SimplicityCertificate c{origami_from_json(j.at("origami")),
                                Sl2zWord::parse(j.at("pinching_word").get<std::string>()),
                                int_matrix_from_json(j.at("pinching_matrix")),
                                {},
                                CylinderWitness{}};
        const json& q = j.at("quartic");
        c.quartic.a = integer_field(q, "a");
        c.quartic.b = integer_field(q, "b");
        c.quartic.delta1 = integer_field(q, "delta1");
        c.quartic.delta2 = integer_field(q, "delta2");
        c.quartic.delta3 = integer_field(q, "delta3");
        c.quartic.t = integer_field(q, "t");
        c.quartic.d = integer_field(q, "d");
        const json& w = j.at("witness");
        const std::string kind = w.at("kind").get<std::string>();
        if (kind == "cylinder") {
            c.witness = CylinderWitness{Sl2zWord::parse(w.at("direction").get<std::string>()),
                                        w.at("dim").get<int>(), w.at("genus").get<int>()};
        } else if (kind == "unipotent") {
            c.witness = UnipotentWitness{Sl2zWord::parse(w.at("word").get<std::string>()),
                                         w.at("rank").get<int>(), w.at("isotropic").get<bool>()};
        } else {
            throw ParseError("unknown witness kind '" + kind + "'");
        }
        return c;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

} // namespace olab

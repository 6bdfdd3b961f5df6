#include "olab/orbit.hpp"

#include "olab/error.hpp"

#include <map>
#include <queue>
#include <thread>

namespace olab {

Origami apply_letter_raw(const Origami& o, Letter l) {
    switch (l) {
    case Letter::T:
        return Origami(o.h(), compose(o.v(), o.h_inv()), o.label());
    case Letter::S:
        return Origami(compose(o.h(), o.v_inv()), o.v(), o.label());
    case Letter::Tinv:
        return Origami(o.h(), compose(o.v(), o.h()), o.label());
    case Letter::Sinv:
        return Origami(compose(o.h(), o.v()), o.v(), o.label());
    }
    throw InternalError("unknown letter");
}

SlStep apply_letter(const Origami& o, Letter l) {
    Origami raw = apply_letter_raw(o, l);
    CanonicalForm cf = canonical_form(raw);
    return SlStep{std::move(raw), std::move(cf.origami), std::move(cf.relabel)};
}

SlStep apply_T(const Origami& o) { return apply_letter(o, Letter::T); }
SlStep apply_S(const Origami& o) { return apply_letter(o, Letter::S); }
SlStep apply_T_inv(const Origami& o) { return apply_letter(o, Letter::Tinv); }
SlStep apply_S_inv(const Origami& o) { return apply_letter(o, Letter::Sinv); }

int OrbitGraph::trace(int node, const Sl2zWord& w) const {
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it)
        node = step(node, *it);
    return node;
}

namespace {

using Key = std::pair<std::vector<int>, std::vector<int>>;

Key key_of(const Origami& o) {
    return {std::vector<int>(o.h().zero_based().begin(), o.h().zero_based().end()),
            std::vector<int>(o.v().zero_based().begin(), o.v().zero_based().end())};
}

// BFS parent data: parent node and the letter leading from it.
struct Tree {
    std::vector<int> parent;
    std::vector<Letter> via;
};

Tree bfs_tree(const OrbitGraph& g) {
    Tree t{std::vector<int>(static_cast<std::size_t>(g.size()), -1),
           std::vector<Letter>(static_cast<std::size_t>(g.size()), Letter::T)};
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::queue<int> q;
    q.push(g.basepoint);
    seen[static_cast<std::size_t>(g.basepoint)] = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (Letter l : kLetters) {
            const int w = g.step(u, l);
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                t.parent[static_cast<std::size_t>(w)] = u;
                t.via[static_cast<std::size_t>(w)] = l;
                q.push(w);
            }
        }
    }
    return t;
}

} // namespace

std::vector<Sl2zWord> OrbitGraph::tree_words() const {
    const Tree t = bfs_tree(*this);
    std::vector<Sl2zWord> words(static_cast<std::size_t>(size()));
    std::vector<char> done(static_cast<std::size_t>(size()), 0);
    done[static_cast<std::size_t>(basepoint)] = 1;
    // parents are discovered first, so a BFS-order sweep resolves them
    std::queue<int> q;
    q.push(basepoint);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (Letter l : kLetters) {
            const int w = step(u, l);
            if (!done[static_cast<std::size_t>(w)] && t.parent[static_cast<std::size_t>(w)] == u &&
                t.via[static_cast<std::size_t>(w)] == l) {
                words[static_cast<std::size_t>(w)] = Sl2zWord({l}) * words[static_cast<std::size_t>(u)];
                done[static_cast<std::size_t>(w)] = 1;
                q.push(w);
            }
        }
    }
    return words;
}

OrbitGraph sl2z_orbit(const Origami& o, int threads) {
    OrbitGraph g;
    CanonicalForm base = canonical_form(o);
    g.base_relabel = base.relabel;
    g.nodes.push_back(base.origami);
    g.basepoint = 0;
    std::map<Key, int> ids;
    ids.emplace(key_of(base.origami), 0);

    std::size_t done = 0;
    while (done < g.nodes.size()) {
        // expand the current frontier; discovery order follows (node, letter)
        const std::size_t end = g.nodes.size();
        std::vector<std::array<SlStep, 4>> steps(end - done);
        auto work = [&](std::size_t from, std::size_t stride) {
            for (std::size_t i = from; i < end - done; i += stride)
                for (Letter l : kLetters)
                    steps[i][static_cast<std::size_t>(index(l))] =
                        apply_letter(g.nodes[done + i], l);
        };
        const std::size_t nthreads =
            threads > 1 ? std::min<std::size_t>(static_cast<std::size_t>(threads), end - done) : 1;
        if (nthreads > 1) {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < nthreads; ++t)
                pool.emplace_back(work, t, nthreads);
            for (auto& th : pool)
                th.join();
        } else {
            work(0, 1);
        }
        for (std::size_t i = 0; i < end - done; ++i) {
            std::array<OrbitEdge, 4> out;
            for (Letter l : kLetters) {
                SlStep& s = steps[i][static_cast<std::size_t>(index(l))];
                auto [it, fresh] = ids.emplace(key_of(s.canonical), static_cast<int>(g.nodes.size()));
                if (fresh)
                    g.nodes.push_back(s.canonical);
                out[static_cast<std::size_t>(index(l))] = OrbitEdge{it->second, std::move(s.relabel)};
            }
            g.edges.push_back(std::move(out));
        }
        done = end;
    }
    return g;
}

int veech_index(const Origami& o) {
    if (!is_reduced(o))
        throw DomainError("veech_index: origami is not reduced");
    return sl2z_orbit(o).size();
}

std::vector<Sl2zWord> veech_generators(const OrbitGraph& g) {
    const auto words = g.tree_words();
    const Tree t = bfs_tree(g);
    std::vector<Sl2zWord> out;
    for (int u = 0; u < g.size(); ++u)
        for (Letter l : {Letter::T, Letter::S}) {
            const int w = g.step(u, l);
            if (t.parent[static_cast<std::size_t>(w)] == u && t.via[static_cast<std::size_t>(w)] == l)
                continue;
            Sl2zWord gen = (words[static_cast<std::size_t>(w)].inverse() * Sl2zWord({l}) *
                            words[static_cast<std::size_t>(u)])
                               .reduced();
            if (gen.empty())
                continue;
            OLAB_ASSERT(g.trace(g.basepoint, gen) == g.basepoint, "Schreier generator is a loop");
            out.push_back(std::move(gen));
        }
    return out;
}

std::vector<Sl2zWord> veech_generators(const Origami& o) {
    if (!is_reduced(o))
        throw DomainError("veech_generators: origami is not reduced");
    return veech_generators(sl2z_orbit(o));
}

json to_json(const OrbitGraph& g) {
    json nodes = json::array();
    for (const auto& n : g.nodes)
        nodes.push_back(to_json(n));
    json edges = json::array();
    for (int u = 0; u < g.size(); ++u)
        for (Letter l : kLetters) {
            const auto& e = g.edges[static_cast<std::size_t>(u)][static_cast<std::size_t>(index(l))];
            edges.push_back(json{{"from", u},
                                 {"gen", std::string(1, letter_char(l))},
                                 {"to", e.target},
                                 {"relabel_images", e.relabel.images()}});
        }
    return json{{"basepoint", g.basepoint}, {"nodes", nodes}, {"edges", edges}};
}

} // namespace olab

#include "olab/perm.hpp"

#include "olab/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <queue>
#include <set>

namespace olab {

Permutation::Permutation(std::vector<int> zero_based)
    : map_(std::move(zero_based)) {
    std::vector<char> seen(map_.size(), 0);
    for (int x : map_) {
        if (x < 0 || x >= degree())
            throw DomainError("permutation image out of range: " +
                              std::to_string(x + 1));
        if (seen[static_cast<std::size_t>(x)]++)
            throw DomainError("permutation image repeated: " +
                              std::to_string(x + 1));
    }
}

Permutation Permutation::identity(int degree) {
    std::vector<int> m(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i)
        m[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::from_images(const std::vector<int>& one_based) {
    std::vector<int> m;
    m.reserve(one_based.size());
    for (int x : one_based)
        m.push_back(x - 1);
    return Permutation(std::move(m));
}

std::vector<int> Permutation::images() const {
    std::vector<int> out;
    out.reserve(map_.size());
    for (int x : map_)
        out.push_back(x + 1);
    return out;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (map_[static_cast<std::size_t>(i)] != i)
            return false;
    return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(map_.size(), 0);
    for (int i = 0; i < degree(); ++i) {
        if (seen[static_cast<std::size_t>(i)])
            continue;
        std::vector<int> c;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
            seen[static_cast<std::size_t>(j)] = 1;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

Permutation parse_cycles(std::string_view text, std::optional<int> degree_hint) {
    if (degree_hint && *degree_hint < 0)
        throw ParseError("negative degree hint");
    std::vector<std::vector<int>> cycles;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    auto fail = [&](const std::string& why) {
        throw ParseError("cycle notation: " + why + " at offset " +
                         std::to_string(pos));
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(')
            fail("expected '('");
        ++pos;
        std::vector<int> cycle;
        for (;;) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() &&
                   std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            if (start == pos)
                fail("expected a positive integer");
            long value = 0;
            auto [ptr, ec] =
                std::from_chars(text.data() + start, text.data() + pos, value);
            if (ec != std::errc() || value < 1 || value > (1L << 30))
                fail("symbol out of range");
            cycle.push_back(static_cast<int>(value));
            skip_ws();
            if (pos >= text.size())
                fail("unterminated cycle");
            if (text[pos] == ',') {
                ++pos;
                continue;
            }
            if (text[pos] == ')') {
                ++pos;
                break;
            }
            fail("expected ',' or ')'");
        }
        cycles.push_back(std::move(cycle));
        skip_ws();
    }

    int degree = degree_hint.value_or(0);
    int max_symbol = 0;
    for (const auto& c : cycles)
        for (int x : c)
            max_symbol = std::max(max_symbol, x);
    if (degree_hint && max_symbol > *degree_hint)
        throw ParseError("symbol " + std::to_string(max_symbol) +
                         " exceeds degree " + std::to_string(*degree_hint));
    degree = std::max(degree, max_symbol);

    std::vector<int> map(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i)
        map[static_cast<std::size_t>(i)] = i;
    std::vector<char> used(static_cast<std::size_t>(degree), 0);
    for (const auto& c : cycles) {
        for (int x : c) {
            if (used[static_cast<std::size_t>(x - 1)]++)
                throw ParseError("symbol " + std::to_string(x) +
                                 " repeated in cycle notation");
        }
        for (std::size_t k = 0; k < c.size(); ++k)
            map[static_cast<std::size_t>(c[k] - 1)] = c[(k + 1) % c.size()] - 1;
    }
    return Permutation(std::move(map));
}

std::string render_cycles(const Permutation& p) {
    std::string out;
    for (const auto& c : p.cycles()) {
        out += '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k)
                out += ',';
            out += std::to_string(c[k] + 1);
        }
        out += ')';
    }
    return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree())
        throw DomainError("compose: degree mismatch");
    std::vector<int> m(static_cast<std::size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i)
        m[static_cast<std::size_t>(i)] = p(q(i));
    return Permutation(std::move(m));
}

Permutation inverse(const Permutation& p) {
    std::vector<int> m(static_cast<std::size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i)
        m[static_cast<std::size_t>(p(i))] = i;
    return Permutation(std::move(m));
}

Permutation conjugate(const Permutation& p, const Permutation& r) {
    if (p.degree() != r.degree())
        throw DomainError("conjugate: degree mismatch");
    // (r p r^-1)(r(i)) = r(p(i))
    std::vector<int> m(static_cast<std::size_t>(p.degree()));
    for (int i = 0; i < p.degree(); ++i)
        m[static_cast<std::size_t>(r(i))] = r(p(i));
    return Permutation(std::move(m));
}

std::vector<int> cycle_type(const Permutation& p) {
    std::vector<int> out;
    for (const auto& c : p.cycles())
        out.push_back(static_cast<int>(c.size()));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_transitive(std::span<const Permutation> generators) {
    if (generators.empty())
        throw DomainError("is_transitive: empty generator list");
    const int n = generators.front().degree();
    for (const auto& g : generators)
        if (g.degree() != n)
            throw DomainError("is_transitive: degree mismatch");
    if (n == 0)
        return true;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        int s = frontier.front();
        frontier.pop();
        for (const auto& g : generators) {
            // finite permutations: forward orbits suffice
            int t = g(s);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                ++count;
                frontier.push(t);
            }
        }
    }
    return count == n;
}

} // namespace olab

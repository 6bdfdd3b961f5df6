#include "olab/sl2z.hpp"

#include "olab/error.hpp"

#include <cctype>
#include <sstream>

namespace olab {

char letter_char(Letter l) {
    switch (l) {
    case Letter::T:
        return 'T';
    case Letter::S:
        return 'S';
    case Letter::Tinv:
        return 't';
    case Letter::Sinv:
        return 's';
    }
    return '?';
}

namespace {

std::int64_t checked_mul_add(std::int64_t x, std::int64_t y, std::int64_t z,
                             std::int64_t w) {
    std::int64_t p, q, r;
    if (__builtin_mul_overflow(x, y, &p) || __builtin_mul_overflow(z, w, &q) ||
        __builtin_add_overflow(p, q, &r))
        throw DomainError("2x2 matrix product overflows 64 bits");
    return r;
}

} // namespace

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return Mat2{checked_mul_add(x.a, y.a, x.b, y.c), checked_mul_add(x.a, y.b, x.b, y.d),
                checked_mul_add(x.c, y.a, x.d, y.c), checked_mul_add(x.c, y.b, x.d, y.d)};
}

Mat2 letter_matrix(Letter l) {
    switch (l) {
    case Letter::T:
        return {1, 1, 0, 1};
    case Letter::S:
        return {1, 0, 1, 1};
    case Letter::Tinv:
        return {1, -1, 0, 1};
    case Letter::Sinv:
        return {1, 0, -1, 1};
    }
    return {};
}

std::string to_string(const Mat2& m) {
    std::ostringstream os;
    os << '(' << m.a << ' ' << m.b << ';' << m.c << ' ' << m.d << ')';
    return os.str();
}

namespace {

struct WordParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("word: " + why + " at offset " + std::to_string(pos));
    }

    std::vector<Letter> sequence(bool nested) {
        std::vector<Letter> out;
        for (;;) {
            skip();
            if (pos >= text.size())
                break;
            const char ch = text[pos];
            if (ch == ')') {
                if (!nested)
                    fail("unbalanced ')'");
                break;
            }
            std::vector<Letter> atom;
            if (ch == '(') {
                ++pos;
                atom = sequence(true);
                skip();
                if (pos >= text.size() || text[pos] != ')')
                    fail("expected ')'");
                ++pos;
            } else {
                switch (ch) {
                case 'T':
                    atom = {Letter::T};
                    break;
                case 'S':
                    atom = {Letter::S};
                    break;
                case 't':
                    atom = {Letter::Tinv};
                    break;
                case 's':
                    atom = {Letter::Sinv};
                    break;
                default:
                    fail(std::string("unexpected character '") + ch + "'");
                }
                ++pos;
            }
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                bool negative = false;
                if (pos < text.size() && text[pos] == '-') {
                    negative = true;
                    ++pos;
                }
                const std::size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                if (start == pos || pos - start > 6)
                    fail("bad exponent");
                const int k = std::stoi(std::string(text.substr(start, pos - start)));
                std::vector<Letter> base = atom;
                if (negative)
                    base = Sl2zWord(base).inverse().letters();
                atom.clear();
                for (int r = 0; r < k; ++r)
                    atom.insert(atom.end(), base.begin(), base.end());
            }
            out.insert(out.end(), atom.begin(), atom.end());
        }
        return out;
    }
};

} // namespace

Sl2zWord Sl2zWord::parse(std::string_view text) {
    WordParser p{text};
    auto letters = p.sequence(false);
    if (p.pos != text.size())
        p.fail("trailing text");
    return Sl2zWord(std::move(letters));
}

Mat2 Sl2zWord::matrix() const {
    Mat2 m;
    for (Letter l : letters_)
        m = m * letter_matrix(l);
    return m;
}

std::string Sl2zWord::to_string() const {
    std::string out;
    for (Letter l : letters_)
        out += letter_char(l);
    return out;
}

Sl2zWord Sl2zWord::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.push_back(olab::inverse(*it));
    return Sl2zWord(std::move(out));
}

Sl2zWord Sl2zWord::reduced() const {
    std::vector<Letter> out;
    for (Letter l : letters_) {
        if (!out.empty() && out.back() == olab::inverse(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return Sl2zWord(std::move(out));
}

Sl2zWord operator*(const Sl2zWord& x, const Sl2zWord& y) {
    std::vector<Letter> out = x.letters_;
    out.insert(out.end(), y.letters_.begin(), y.letters_.end());
    return Sl2zWord(std::move(out));
}

Sl2zWord power(Letter l, int k) {
    std::vector<Letter> out;
    const Letter x = k >= 0 ? l : inverse(l);
    for (int i = 0; i < (k >= 0 ? k : -k); ++i)
        out.push_back(x);
    return Sl2zWord(std::move(out));
}

Sl2zWord sl2z_word(const Mat2& input) {
    if (input.det() != 1)
        throw DomainError("sl2z_word: determinant is not 1");
    // Reduce by left multiplications X_k ... X_1 m = ±(1 b;0 1); then
    // m = X_1⁻¹ ... X_k⁻¹ · (remainder).
    Mat2 m = input;
    std::vector<Letter> out;
    auto emit = [&](Letter l, std::int64_t q) {
        const Letter x = q >= 0 ? l : inverse(l);
        for (std::int64_t i = 0; i < (q >= 0 ? q : -q); ++i)
            out.push_back(x);
    };
    while (m.c != 0) {
        const std::int64_t abs_a = m.a < 0 ? -m.a : m.a;
        const std::int64_t abs_c = m.c < 0 ? -m.c : m.c;
        if (m.a != 0 && abs_c >= abs_a) {
            const std::int64_t q = m.c / m.a;
            m.c -= q * m.a;
            m.d -= q * m.b;
            emit(Letter::S, q);
        } else {
            const std::int64_t q = m.a == 0 ? (m.c > 0 ? -1 : 1) : m.a / m.c;
            m.a -= q * m.c;
            m.b -= q * m.d;
            emit(Letter::T, q);
        }
    }
    OLAB_ASSERT(m.a == m.d && (m.a == 1 || m.a == -1), "reduced to ±(1 b;0 1)");
    if (m.a == 1) {
        emit(Letter::T, m.b);
    } else {
        // -Id = (T S⁻¹ T)², and (-1 b;0 -1) = -Id · T^(-b)
        for (int r = 0; r < 2; ++r) {
            out.push_back(Letter::T);
            out.push_back(Letter::Sinv);
            out.push_back(Letter::T);
        }
        emit(Letter::T, -m.b);
    }
    Sl2zWord w(std::move(out));
    OLAB_ASSERT(w.matrix() == input, "sl2z_word round trip");
    return w;
}

} // namespace olab

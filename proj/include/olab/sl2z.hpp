#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace olab {

enum class Letter : std::uint8_t { T = 0, S = 1, Tinv = 2, Sinv = 3 };

inline constexpr std::array<Letter, 4> kLetters{Letter::T, Letter::S, Letter::Tinv,
                                                Letter::Sinv};

inline Letter inverse(Letter l) {
    return static_cast<Letter>((static_cast<int>(l) + 2) % 4);
}
inline int index(Letter l) { return static_cast<int>(l); }
char letter_char(Letter l); // T S t s

/// 2x2 integer matrix (a b; c d).
struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    std::int64_t det() const { return a * d - b * c; }
    std::int64_t trace() const { return a + d; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};
/// Throws DomainError on int64 overflow.
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 letter_matrix(Letter l);
std::string to_string(const Mat2& m);

/// Letters in matrix-product order: the matrix is letters[0] * letters[1] * ...
/// Acting on an origami, the rightmost letter is applied first.
class Sl2zWord {
  public:
    Sl2zWord() = default;
    explicit Sl2zWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    /// "TSts": lowercase letters are inverses; spaces and '*' are ignored,
    /// "T^6" and "(TS)^2" style powers are accepted.
    static Sl2zWord parse(std::string_view text);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Mat2 matrix() const;
    std::string to_string() const;

    Sl2zWord inverse() const;
    Sl2zWord reduced() const; // free reduction
    friend Sl2zWord operator*(const Sl2zWord& x, const Sl2zWord& y);
    friend bool operator==(const Sl2zWord&, const Sl2zWord&) = default;

  private:
    std::vector<Letter> letters_;
};

Sl2zWord power(Letter l, int k); // negative k uses the inverse letter

/// Word whose matrix is m exactly. Throws DomainError unless det m == 1.
Sl2zWord sl2z_word(const Mat2& m);

} // namespace olab

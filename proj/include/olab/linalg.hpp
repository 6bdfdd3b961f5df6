#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace olab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::vector<T> column(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = (*this)(r, c);
        return out;
    }
    void set_column(std::size_t c, const std::vector<T>& v) {
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0),
      data_(rows_ * cols_) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (long x : row)
            (*this)(r, c++) = x;
        ++r;
    }
}

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b);
template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x);

RatMatrix to_rational(const IntMatrix& m);
/// std::nullopt when some entry is not an integer.
std::optional<IntMatrix> to_integral(const RatMatrix& m);

/// Columns side by side.
IntMatrix hstack(const std::vector<IntVector>& columns, std::size_t rows);

Integer determinant(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
/// Throws DomainError when singular.
RatMatrix inverse(const RatMatrix& m);
/// Inverse of a matrix with determinant ±1; throws DomainError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// left * a * right == diagonal, with left/right unimodular and the diagonal
/// entries non-negative, each dividing the next.
struct SmithForm {
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;
    std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Basis (as columns) of the saturated lattice {x in Z^n : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);
/// Basis (as columns) of the kernel over Q, scaled to primitive integer
/// vectors.
RatMatrix rational_kernel(const RatMatrix& a);

/// Solves a x = b over Q; std::nullopt when inconsistent. Columns of `a` must
/// be independent.
std::optional<std::vector<Rational>> solve_full_column_rank(
    const RatMatrix& a, const std::vector<Rational>& b);

/// Coefficients c_0..c_n of det(x I - m), so c_n == 1.
IntVector charpoly(const IntMatrix& m);
std::vector<Rational> charpoly(const RatMatrix& m);

std::string format_polynomial(const IntVector& coeffs, char var = 'x');
std::string format_matrix(const IntMatrix& m);

} // namespace olab

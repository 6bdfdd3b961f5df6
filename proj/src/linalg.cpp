#include "olab/linalg.hpp"

#include "olab/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace olab {

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw DomainError("matrix product: shape mismatch");
    Matrix<T> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("matrix sum: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) + b(i, j);
    return out;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DomainError("matrix difference: shape mismatch");
    Matrix<T> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j) - b(i, j);
    return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size())
        throw DomainError("matrix-vector product: shape mismatch");
    std::vector<T> out(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out[i] += a(i, j) * x[j];
    return out;
}

template IntMatrix operator*(const IntMatrix&, const IntMatrix&);
template RatMatrix operator*(const RatMatrix&, const RatMatrix&);
template IntMatrix operator+(const IntMatrix&, const IntMatrix&);
template RatMatrix operator+(const RatMatrix&, const RatMatrix&);
template IntMatrix operator-(const IntMatrix&, const IntMatrix&);
template RatMatrix operator-(const RatMatrix&, const RatMatrix&);
template IntVector operator*(const IntMatrix&, const IntVector&);
template std::vector<Rational> operator*(const RatMatrix&,
                                         const std::vector<Rational>&);

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

std::optional<IntMatrix> to_integral(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1)
                return std::nullopt;
            out(i, j) = m(i, j).get_num();
        }
    return out;
}

IntMatrix hstack(const std::vector<IntVector>& columns, std::size_t rows) {
    IntMatrix out(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows)
            throw DomainError("hstack: column length mismatch");
        out.set_column(c, columns[c]);
    }
    return out;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("determinant: non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(row, j));
        Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0)
                continue;
            Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("inverse: non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw DomainError("inverse: singular matrix");
    RatMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = aug(i, n + j);
    return out;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    Integer d = determinant(m);
    if (d != 1 && d != -1)
        throw DomainError("unimodular_inverse: determinant is not ±1");
    auto inv = to_integral(inverse(to_rational(m)));
    OLAB_ASSERT(inv.has_value(), "inverse of unimodular matrix is integral");
    return *inv;
}

SmithForm smith_normal_form(const IntMatrix& input) {
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    IntMatrix a = input;
    IntMatrix left = IntMatrix::identity(m);
    IntMatrix right = IntMatrix::identity(n);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t c = 0; c < n; ++c)
            std::swap(a(i, c), a(j, c));
        for (std::size_t c = 0; c < m; ++c)
            std::swap(left(i, c), left(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j)
            return;
        for (std::size_t r = 0; r < m; ++r)
            std::swap(a(r, i), a(r, j));
        for (std::size_t r = 0; r < n; ++r)
            std::swap(right(r, i), right(r, j));
    };
    // row_i -= q * row_j
    auto sub_row = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t c = 0; c < n; ++c)
            a(i, c) -= q * a(j, c);
        for (std::size_t c = 0; c < m; ++c)
            left(i, c) -= q * left(j, c);
    };
    // col_i -= q * col_j
    auto sub_col = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t r = 0; r < m; ++r)
            a(r, i) -= q * a(r, j);
        for (std::size_t r = 0; r < n; ++r)
            right(r, i) -= q * right(r, j);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // pivot: smallest non-zero |entry| in the trailing block
        for (;;) {
            std::size_t pr = m, pc = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 &&
                        (pr == m || abs(a(i, j)) < abs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == m) {
                SmithForm out{left, a, right, t};
                return out;
            }
            swap_rows(t, pr);
            swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                sub_row(i, t, q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                sub_col(j, t, q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        // fold row i into row t and retry
                        sub_row(t, i, Integer(-1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c)
                a(t, c) = -a(t, c);
            for (std::size_t c = 0; c < m; ++c)
                left(t, c) = -left(t, c);
        }
    }
    return SmithForm{left, a, right, t};
}

IntMatrix integer_kernel(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    const std::size_t n = a.cols();
    IntMatrix out(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r)
            out(r, j - s.rank) = s.right(r, j);
    return out;
}

RatMatrix rational_kernel(const RatMatrix& m) {
    RatMatrix a = m;
    auto pivots = rref(a);
    std::vector<char> is_pivot(m.cols(), 0);
    for (auto p : pivots)
        is_pivot[p] = 1;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -a(k, free);
        // primitive integer scaling
        Integer l = 1, g = 0;
        for (auto& x : v)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (auto& x : v) {
            x *= l;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
        }
        if (g != 0)
            for (auto& x : v)
                x /= g;
        basis.push_back(std::move(v));
    }
    RatMatrix out(m.cols(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        out.set_column(j, basis[j]);
    return out;
}

std::optional<std::vector<Rational>> solve_full_column_rank(
    const RatMatrix& a, const std::vector<Rational>& b) {
    const std::size_t m = a.rows(), n = a.cols();
    RatMatrix aug(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == n)
        return std::nullopt;
    if (pivots.size() != n)
        throw DomainError("solve: columns are dependent");
    std::vector<Rational> x(n);
    for (std::size_t k = 0; k < n; ++k)
        x[pivots[k]] = aug(k, n);
    return x;
}

IntVector charpoly(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("charpoly: non-square matrix");
    const std::size_t n = m.rows();
    // Faddeev-LeVerrier; the divisions are exact over Z.
    IntVector c(n + 1);
    c[n] = 1;
    IntMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        mk = next;
        IntMatrix amk = m * mk;
        Integer tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += amk(i, i);
        Integer q = -tr;
        OLAB_ASSERT(q % static_cast<long>(k) == 0, "Faddeev-LeVerrier exactness");
        c[n - k] = q / static_cast<long>(k);
    }
    return c;
}

std::vector<Rational> charpoly(const RatMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("charpoly: non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    RatMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i)
            next(i, i) += c[n - k + 1];
        mk = next;
        RatMatrix amk = m * mk;
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            tr += amk(i, i);
        c[n - k] = -tr / Rational(static_cast<long>(k));
    }
    return c;
}

std::string format_polynomial(const IntVector& coeffs, char var) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        const Integer& c = coeffs[k];
        if (c == 0)
            continue;
        Integer mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        if (mag != 1 || k == 0)
            os << mag.get_str();
        if (k >= 1)
            os << var;
        if (k >= 2)
            os << '^' << k;
        first = false;
    }
    if (first)
        os << '0';
    return os.str();
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

} // namespace olab

#include "olab/galois.hpp"

#include "olab/error.hpp"

namespace olab {

ReciprocalQuartic ReciprocalQuartic::from_ab(const Integer& a, const Integer& b) {
    ReciprocalQuartic q;
    q.a = a;
    q.b = b;
    q.delta1 = a * a - 4 * b + 8;
    q.delta2 = (b + 2 - 2 * a) * (b + 2 + 2 * a);
    q.delta3 = q.delta1 * q.delta2;
    q.t = -a - 4;
    q.d = b + 2 + 2 * a;
    return q;
}

IntVector ReciprocalQuartic::coefficients() const { return {1, a, b, a, 1}; }

bool ReciprocalQuartic::consistent() const {
    const ReciprocalQuartic r = from_ab(a, b);
    return r.delta1 == delta1 && r.delta2 == delta2 && r.delta3 == delta3 && r.t == t &&
           r.d == d;
}

ReciprocalQuartic quartic_from_charpoly(const IntVector& c) {
    if (c.size() != 5)
        throw DomainError("quartic: degree is not 4");
    if (c[4] != 1)
        throw DomainError("quartic: not monic");
    if (c[0] != 1 || c[1] != c[3])
        throw DomainError("quartic: not reciprocal");
    return ReciprocalQuartic::from_ab(c[3], c[2]);
}

bool is_perfect_square(const Integer& n) {
    if (n < 0)
        return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

namespace {

using Poly = std::vector<Rational>; // constant term first

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Poly derivative(const Poly& p) {
    Poly out;
    for (std::size_t k = 1; k < p.size(); ++k)
        out.push_back(p[k] * Rational(static_cast<long>(k)));
    trim(out);
    return out;
}

// remainder of a / b
Poly remainder(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const Rational f = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            a[shift + k] -= f * b[k];
        a.pop_back();
        trim(a);
    }
    return a;
}

int sign_at_infinity(const Poly& p, bool negative) {
    const int s = sgn(p.back());
    if (negative && (p.size() - 1) % 2 == 1)
        return -s;
    return s;
}

int sign_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

} // namespace

int distinct_real_roots(const std::vector<Rational>& coeffs) {
    Poly p = coeffs;
    trim(p);
    if (p.size() <= 1)
        return 0;
    std::vector<Poly> seq{p, derivative(p)};
    while (seq.back().size() > 1) {
        Poly r = remainder(seq[seq.size() - 2], seq.back());
        if (r.empty())
            break;
        for (auto& x : r)
            x = -x;
        seq.push_back(std::move(r));
    }
    std::vector<int> lo, hi;
    for (const auto& s : seq) {
        lo.push_back(sign_at_infinity(s, true));
        hi.push_back(sign_at_infinity(s, false));
    }
    return sign_changes(lo) - sign_changes(hi);
}

bool has_real_simple_roots(const ReciprocalQuartic& q) {
    const IntVector c = q.coefficients();
    const std::vector<Rational> p(c.begin(), c.end());
    const bool sturm = distinct_real_roots(p) == 4;
    if (positive_root_criterion(q))
        OLAB_ASSERT(sturm, "positive-root criterion implies four real roots");
    return sturm;
}

bool positive_root_criterion(const ReciprocalQuartic& q) {
    return q.delta1 > 0 && q.t > 0 && q.d > 0;
}

std::optional<bool> irreducible_fast_path(const ReciprocalQuartic& q) {
    // a product of two reciprocal quadratics exactly when delta1 is a square
    if (is_perfect_square(q.delta1))
        return false;
    if (!is_perfect_square(q.delta2))
        return true;
    return std::nullopt;
}

bool is_irreducible(const ReciprocalQuartic& q) {
    // rational roots can only be ±1
    const Integer at_one = 2 + 2 * q.a + q.b;
    const Integer at_minus_one = 2 - 2 * q.a + q.b;
    bool irreducible = at_one != 0 && at_minus_one != 0;
    // integral quadratic factors (x² + p x + c)(x² + r x + c) with c = ±1:
    // c = 1 forces p + r = a, p r = b − 2; c = −1 forces a = 0, p r = b + 2, r = −p
    if (irreducible && is_perfect_square(q.delta1))
        irreducible = false;
    if (irreducible && q.a == 0 && is_perfect_square(-q.b - 2))
        irreducible = false;
    if (auto fast = irreducible_fast_path(q))
        OLAB_ASSERT(*fast == irreducible, "discriminant fast path agrees with factor search");
    return irreducible;
}

namespace {

IntMatrix standard_form(std::size_t n) {
    IntMatrix j(n, n);
    for (std::size_t i = 0; i < n / 2; ++i) {
        j(i, n / 2 + i) = 1;
        j(n / 2 + i, i) = -1;
    }
    return j;
}

} // namespace

PinchingReport is_galois_pinching_sp4(const IntMatrix& m, const std::optional<IntMatrix>& form) {
    if (m.rows() != 4 || m.cols() != 4)
        throw DomainError("Galois-pinching test needs a 4x4 matrix");
    const IntMatrix j = form.value_or(standard_form(4));
    if (!(m.transpose() * j * m == j))
        throw DomainError("matrix is not symplectic");
    PinchingReport rep;
    rep.charpoly = charpoly(m);
    const ReciprocalQuartic q = quartic_from_charpoly(rep.charpoly);
    rep.quartic = q;
    rep.irreducible = is_irreducible(q);
    rep.real_simple_roots = has_real_simple_roots(q);
    rep.squares_excluded = !is_perfect_square(q.delta1) && !is_perfect_square(q.delta2) &&
                           !is_perfect_square(q.delta3);
    rep.pinching = rep.irreducible && rep.real_simple_roots && rep.squares_excluded;
    return rep;
}

bool is_galois_pinching_sl2(const IntMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2)
        throw DomainError("sl2 pinching test needs a 2x2 matrix");
    if (determinant(m) != 1)
        throw DomainError("sl2 pinching test needs determinant 1");
    const Integer tr = m(0, 0) + m(1, 1);
    return abs(tr) > 2 && !is_perfect_square(tr * tr - 4);
}

bool is_galois_pinching(const IntMatrix& m, const std::optional<IntMatrix>& form) {
    if (m.rows() == 2 && m.cols() == 2)
        return is_galois_pinching_sl2(m);
    if (m.rows() == 4 && m.cols() == 4)
        return is_galois_pinching_sp4(m, form).pinching;
    throw DomainError("Galois-pinching tests are only available for sizes 2 and 4");
}

} // namespace olab

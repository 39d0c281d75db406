#pragma once

/**
 * @file poly.hpp
 * @brief Integer univariate polynomials and binary forms: exact evaluation,
 *        resultants and discriminants, homogenization, unimodular substitution,
 *        and rational root extraction.
 */

#include "sparts/arith.hpp"
#include "sparts/integer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace sparts {

/// Dense integer polynomial, coefficients in ascending degree order.
/// The zero polynomial is represented by an empty coefficient vector.
class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    IntPoly(std::initializer_list<std::int64_t> coeffs) {
        c_.reserve(coeffs.size());
        for (auto v : coeffs) c_.emplace_back(v);
        trim();
    }

    bool is_zero() const { return c_.empty(); }

    /// Degree, with -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of X^i (0 beyond the degree).
    const Int& coeff(std::size_t i) const {
        static const Int zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    const std::vector<Int>& coeffs() const { return c_; }

    const Int& leading() const {
        SPARTS_CHECK(!c_.empty(), "zero polynomial has no leading coefficient");
        return c_.back();
    }

    Int evaluate(const Int& x) const {
        Int r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    Rat evaluate(const Rat& x) const {
        Rat r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + Rat(c_[i]);
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Int> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(i);
        return IntPoly(std::move(d));
    }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Int> c_;
};

/// Content (gcd of coefficients, non-negative; 0 for the zero polynomial).
inline Int poly_content(const IntPoly& f) {
    Int g = 0;
    for (const Int& c : f.coeffs()) g = gcd_int(g, c);
    return g;
}

/// Greatest common divisor over Q, returned as a primitive integer polynomial
/// with positive leading coefficient; primitive pseudo-remainder sequence.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    auto make_primitive = [](const IntPoly& f) {
        if (f.is_zero()) return f;
        Int g = poly_content(f);
        if (f.leading() < 0) g = -g;
        std::vector<Int> c = f.coeffs();
        for (Int& x : c) x /= g;
        return IntPoly(std::move(c));
    };
    a = make_primitive(a);
    b = make_primitive(b);
    while (!b.is_zero()) {
        // Pseudo-remainder of a by b: multiply a by lc(b)^(da-db+1) so the
        // division stays integral, then reduce.
        int da = a.degree(), db = b.degree();
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        std::vector<Int> r = a.coeffs();
        Int lb = b.leading();
        Int scale = pow_int(lb, static_cast<unsigned long>(da - db + 1));
        for (Int& x : r) x *= scale;
        for (int d = da; d >= db; --d) {
            Int q = r[static_cast<std::size_t>(d)] / lb;
            if (q.is_zero()) continue;
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(d - db + j)] -= q * b.coeff(static_cast<std::size_t>(j));
        }
        r.resize(static_cast<std::size_t>(db));
        a = b;
        b = make_primitive(IntPoly(std::move(r)));
    }
    return a;
}

/// Exact determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination.
inline Int bareiss_determinant(std::vector<std::vector<Int>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        SPARTS_CHECK(row.size() == n, "determinant needs a square matrix");
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                Int q, r;
                boost::multiprecision::divide_qr(num, prev, q, r);
                SPARTS_INVARIANT(r.is_zero(), "Bareiss division not exact");
                m[i][j] = q;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Int det = m[n - 1][n - 1];
    return sign == 1 ? det : -det;
}

/// Resultant Res(f, g) via the Sylvester matrix (0 when either is zero).
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    int df = f.degree(), dg = g.degree();
    if (df == 0) return pow_int(f.coeff(0), static_cast<unsigned long>(dg));
    if (dg == 0) return pow_int(g.coeff(0), static_cast<unsigned long>(df));
    std::size_t n = static_cast<std::size_t>(df + dg);
    std::vector<std::vector<Int>> syl(n, std::vector<Int>(n, Int(0)));
    for (int row = 0; row < dg; ++row)
        for (int j = 0; j <= df; ++j)
            syl[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] =
                f.coeff(static_cast<std::size_t>(df - j));
    for (int row = 0; row < df; ++row)
        for (int j = 0; j <= dg; ++j)
            syl[static_cast<std::size_t>(dg + row)][static_cast<std::size_t>(row + j)] =
                g.coeff(static_cast<std::size_t>(dg - j));
    return bareiss_determinant(std::move(syl));
}

/**
 * Discriminant of f via Res(f, f') with the standard normalization
 * (-1)^{n(n-1)/2} Res(f, f') / lc(f); degree-1 polynomials have
 * discriminant 1 by convention.
 */
inline Int poly_discriminant(const IntPoly& f) {
    SPARTS_CHECK(f.degree() >= 1, "discriminant needs degree >= 1");
    int n = f.degree();
    if (n == 1) return 1;
    Int res = resultant(f, f.derivative());
    Int q, r;
    boost::multiprecision::divide_qr(res, f.leading(), q, r);
    SPARTS_INVARIANT(r.is_zero(), "discriminant normalization not exact");
    return (n % 4 == 2 || n % 4 == 3) ? -q : q;
}

/**
 * Homogeneous binary form c_0 X^n + c_1 X^{n-1}Y + ... + c_n Y^n, stored as
 * the coefficient list c_0..c_n. Not identically zero.
 */
class BinaryForm {
public:
    explicit BinaryForm(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
        SPARTS_CHECK(!c_.empty(), "binary form needs at least one coefficient");
        bool all_zero = true;
        for (const Int& x : c_)
            if (!x.is_zero()) all_zero = false;
        SPARTS_CHECK(!all_zero, "binary form must not be identically zero");
    }

    BinaryForm(std::initializer_list<std::int64_t> coeffs)
        : BinaryForm([&] {
              std::vector<Int> v;
              v.reserve(coeffs.size());
              for (auto x : coeffs) v.emplace_back(x);
              return v;
          }()) {}

    int degree() const { return static_cast<int>(c_.size()) - 1; }

    /// Coefficient of X^{n-i} Y^i.
    const Int& coeff(std::size_t i) const { return c_[i]; }

    const std::vector<Int>& coeffs() const { return c_; }

    Int evaluate(const Int& x, const Int& y) const {
        Int r = c_[0];
        Int ypow = 1;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            ypow *= y;
            r = r * x + c_[i] * ypow;
        }
        return r;
    }

    /// f(X) = F(X, 1); degree drops when leading coefficients vanish.
    IntPoly dehomogenize_x() const {
        std::vector<Int> a(c_.rbegin(), c_.rend());
        return IntPoly(std::move(a));
    }

    /// f*(X) = F(1, X).
    IntPoly dehomogenize_y() const {
        std::vector<Int> a(c_.begin(), c_.end());
        return IntPoly(std::move(a));
    }

    bool operator==(const BinaryForm& o) const { return c_ == o.c_; }

private:
    std::vector<Int> c_;
};

/// Y^n f(X/Y), or Y^{n+1} f(X/Y) with extra_power set.
inline BinaryForm homogenize(const IntPoly& f, bool extra_power) {
    SPARTS_CHECK(f.degree() >= 1, "homogenize needs degree >= 1");
    std::vector<Int> c(f.coeffs().rbegin(), f.coeffs().rend());
    if (extra_power) c.insert(c.begin(), Int(0));
    return BinaryForm(std::move(c));
}

namespace detail {

/// Coefficients of (a X + b Y)^e as a homogeneous list of length e+1.
inline std::vector<Int> linear_power(const Int& a, const Int& b, int e) {
    std::vector<Int> cur{Int(1)};
    for (int i = 0; i < e; ++i) {
        std::vector<Int> next(cur.size() + 1, Int(0));
        for (std::size_t j = 0; j < cur.size(); ++j) {
            next[j] += cur[j] * a;
            next[j + 1] += cur[j] * b;
        }
        cur = std::move(next);
    }
    return cur;
}

/// Product of two homogeneous coefficient lists.
inline std::vector<Int> homog_mul(const std::vector<Int>& u, const std::vector<Int>& v) {
    std::vector<Int> out(u.size() + v.size() - 1, Int(0));
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) out[i + j] += u[i] * v[j];
    }
    return out;
}

} // namespace detail

/// F(aX + bY, cX + dY) for U = [[a, b], [c, d]] with det U = +-1, expanded
/// exactly.
inline BinaryForm unimodular_transform(const BinaryForm& F,
                                       const std::array<std::array<Int, 2>, 2>& U) {
    const Int& a = U[0][0];
    const Int& b = U[0][1];
    const Int& c = U[1][0];
    const Int& d = U[1][1];
    Int det = a * d - b * c;
    SPARTS_CHECK(det == 1 || det == -1, "transform matrix must be unimodular");
    int n = F.degree();
    std::vector<Int> acc(static_cast<std::size_t>(n) + 1, Int(0));
    for (int i = 0; i <= n; ++i) {
        if (F.coeff(static_cast<std::size_t>(i)).is_zero()) continue;
        auto term = detail::homog_mul(detail::linear_power(a, b, n - i),
                                      detail::linear_power(c, d, i));
        for (std::size_t j = 0; j < acc.size(); ++j)
            acc[j] += F.coeff(static_cast<std::size_t>(i)) * term[j];
    }
    return BinaryForm(std::move(acc));
}

/**
 * Discriminant of a binary form, invariant under unimodular substitution.
 * When F(1,0) = 0 the form is first sheared by Y -> bX + Y with the smallest
 * |b| <= n making F(1,b) non-zero, which changes nothing.
 */
inline Int binary_discriminant(const BinaryForm& F) {
    SPARTS_CHECK(F.degree() >= 2, "binary discriminant needs degree >= 2");
    int n = F.degree();
    if (!F.coeff(0).is_zero()) return poly_discriminant(F.dehomogenize_x());
    IntPoly section = F.dehomogenize_y();  // F(1, b) as a polynomial in b
    for (int ab = 1; ab <= n; ++ab) {
        for (Int b : {Int(ab), Int(-ab)}) {
            if (section.evaluate(b).is_zero()) continue;
            std::array<std::array<Int, 2>, 2> shear{{{Int(1), Int(0)}, {b, Int(1)}}};
            return poly_discriminant(unimodular_transform(F, shear).dehomogenize_x());
        }
    }
    invariant_failure("no shear with F(1,b) != 0 exists for a non-zero form");
}

/// c_F = sum of |coefficients|; guarantees |F(x,y)| <= c_F max(|x|,|y|)^n.
inline Int height_bound(const BinaryForm& F) {
    Int s = 0;
    for (const Int& c : F.coeffs()) s += abs_int(c);
    return s;
}

namespace detail {

/// All positive divisors of |n| (n != 0), unsorted.
inline std::vector<Int> positive_divisors(const Int& n) {
    Int a = abs_int(n);
    std::vector<Int> divs{Int(1)};
    if (a == 1) return divs;
    SPARTS_CHECK(fits_int64(a), "divisor enumeration limited to 64-bit values");
    auto factors = factor_u64(static_cast<std::uint64_t>(to_int64(a)));
    for (const auto& [p, e] : factors) {
        std::size_t base = divs.size();
        Int pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= Int(p);
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
        }
    }
    return divs;
}

} // namespace detail

/**
 * All distinct rational roots of f (degree >= 1), sorted ascending.
 * Candidates p/q with p | constant term and q | leading coefficient.
 */
inline std::vector<Rat> rational_roots(const IntPoly& f) {
    SPARTS_CHECK(f.degree() >= 1, "rational_roots needs degree >= 1");
    std::vector<Rat> out;
    IntPoly g = f;
    // Strip X^v so the constant term is non-zero.
    std::size_t v = 0;
    while (v < g.coeffs().size() && g.coeffs()[v].is_zero()) ++v;
    if (v > 0) {
        out.push_back(Rat(0));
        std::vector<Int> c(g.coeffs().begin() + static_cast<std::ptrdiff_t>(v),
                           g.coeffs().end());
        g = IntPoly(std::move(c));
    }
    if (g.degree() >= 1) {
        auto nums = detail::positive_divisors(g.coeff(0));
        auto dens = detail::positive_divisors(g.leading());
        for (const Int& p : nums)
            for (const Int& q : dens) {
                Rat r(p, q);
                if (g.evaluate(r) == 0) out.push_back(r);
                if (g.evaluate(-r) == 0) out.push_back(-r);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace sparts

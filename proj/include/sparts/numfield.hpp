#pragma once
/**
 * Exact arithmetic in a number field K = Q[t]/(m(t)) for a monic integer
 * minimal polynomial m, together with user-supplied automorphism groups
 * (validated, never computed), linear forms with K-coefficients, and ranks
 * of families of such forms — optionally restricted to a rational subspace.
 *
 * Elements are coefficient vectors of exact rationals over the power basis
 * 1, t, ..., t^{d-1}. No floating point enters any computation here.
 */

#include "sparts/integer.hpp"
#include "sparts/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace sparts {

/// Coefficients over the basis 1, t, ..., t^{d-1} of the field.
using FieldElement = std::vector<Rat>;

namespace detail {

/// Floor square root r of n >= 0 with r*r == n required for a hit.
inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

}  // namespace detail

class NumberField {
public:
    /**
     * Requires m monic with integer coefficients and degree >= 1. Reducible
     * inputs are rejected whenever reducibility is decidable here: rational
     * roots at every degree, and quadratic splittings at degree 4. Degrees
     * above 4 (and degree-4 inputs whose constant term overflows the divisor
     * scan) are accepted with irreducibility_certified() == false.
     */
    explicit NumberField(IntPoly min_poly) : min_poly_(std::move(min_poly)) {
        SPARTS_CHECK(min_poly_.degree() >= 1, "minimal polynomial must be nonconstant");
        SPARTS_CHECK(min_poly_.coeffs().back() == 1, "minimal polynomial must be monic");
        degree_ = static_cast<unsigned>(min_poly_.degree());
        certified_ = certify_irreducible();
    }

    unsigned degree() const { return degree_; }
    const IntPoly& min_poly() const { return min_poly_; }
    bool irreducibility_certified() const { return certified_; }

    FieldElement zero() const { return FieldElement(degree_, Rat(0)); }

    FieldElement one() const {
        FieldElement e = zero();
        e[0] = 1;
        return e;
    }

    FieldElement from_rat(const Rat& r) const {
        FieldElement e = zero();
        e[0] = r;
        return e;
    }

    /// The class of t itself; at degree 1 this reduces to -m(0).
    FieldElement gen() const {
        FieldElement e = zero();
        if (degree_ == 1) e[0] = -Rat(min_poly_.coeffs()[0]);
        else e[1] = 1;
        return e;
    }

    FieldElement element(std::vector<Rat> coeffs) const {
        SPARTS_CHECK(coeffs.size() == degree_,
                     "element needs exactly one coefficient per basis vector");
        return coeffs;
    }

    bool is_zero(const FieldElement& a) const {
        check_element(a);
        return std::all_of(a.begin(), a.end(), [](const Rat& c) { return c == 0; });
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        check_element(a);
        check_element(b);
        FieldElement r = a;
        for (unsigned i = 0; i < degree_; ++i) r[i] += b[i];
        return r;
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        check_element(a);
        check_element(b);
        FieldElement r = a;
        for (unsigned i = 0; i < degree_; ++i) r[i] -= b[i];
        return r;
    }

    FieldElement neg(const FieldElement& a) const {
        check_element(a);
        FieldElement r = a;
        for (unsigned i = 0; i < degree_; ++i) r[i] = -r[i];
        return r;
    }

    FieldElement scale(const Rat& c, const FieldElement& a) const {
        check_element(a);
        FieldElement r = a;
        for (unsigned i = 0; i < degree_; ++i) r[i] *= c;
        return r;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        check_element(a);
        check_element(b);
        std::vector<Rat> prod(2 * degree_ - 1, Rat(0));
        for (unsigned i = 0; i < degree_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < degree_; ++j) prod[i + j] += a[i] * b[j];
        }
        reduce(prod);
        prod.resize(degree_, Rat(0));
        return prod;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    FieldElement inverse(const FieldElement& a) const {
        check_element(a);
        SPARTS_CHECK(!is_zero(a), "zero has no inverse");
        // Bezout pair for gcd(a(t), m(t)); m irreducible makes the gcd a
        // non-zero constant whenever deg a < deg m.
        std::vector<Rat> r0;  // m(t)
        for (const Int& c : min_poly_.coeffs()) r0.emplace_back(c);
        std::vector<Rat> r1(a.begin(), a.end());
        trim(r1);
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // coefficients of a(t)
        while (!r1.empty()) {
            auto [q, rem] = divmod(r0, r1);
            std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        SPARTS_INVARIANT(r0.size() == 1 && r0[0] != 0,
                         "an irreducible modulus leaves a constant gcd");
        FieldElement inv = zero();
        reduce(s0);
        for (std::size_t i = 0; i < s0.size() && i < degree_; ++i) inv[i] = s0[i] / r0[0];
        SPARTS_INVARIANT(mul(a, inv) == one(), "inverse certifies a * a^{-1} = 1");
        return inv;
    }

    FieldElement div(const FieldElement& a, const FieldElement& b) const {
        return mul(a, inverse(b));
    }

    /// f(x) computed in K by Horner's rule, for integer polynomials f.
    FieldElement eval_at(const IntPoly& f, const FieldElement& x) const {
        check_element(x);
        FieldElement r = zero();
        const auto& c = f.coeffs();
        for (std::size_t i = c.size(); i-- > 0;) {
            r = mul(r, x);
            r[0] += Rat(c[i]);
        }
        return r;
    }

    /// a(sigma_t): the image of the element a under t -> sigma_t.
    FieldElement apply(const FieldElement& sigma_t, const FieldElement& a) const {
        check_element(sigma_t);
        check_element(a);
        FieldElement r = zero();
        for (std::size_t i = degree_; i-- > 0;) {
            r = mul(r, sigma_t);
            r[0] += a[i];
        }
        return r;
    }

private:
    void check_element(const FieldElement& a) const {
        SPARTS_CHECK(a.size() == degree_, "element belongs to a field of another degree");
    }

    static void trim(std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    /// Reduce a coefficient vector mod the monic minimal polynomial.
    void reduce(std::vector<Rat>& v) const {
        const auto& mc = min_poly_.coeffs();
        for (std::size_t i = v.size(); i-- > degree_;) {
            Rat c = v[i];
            if (c == 0) continue;
            v[i] = 0;
            for (unsigned j = 0; j < degree_; ++j) v[i - degree_ + j] -= c * Rat(mc[j]);
        }
        if (v.size() > degree_) v.resize(degree_);
    }

    static std::pair<std::vector<Rat>, std::vector<Rat>> divmod(std::vector<Rat> a,
                                                               const std::vector<Rat>& b) {
        std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
        while (a.size() >= b.size() && !a.empty()) {
            Rat f = a.back() / b.back();
            std::size_t shift = a.size() - b.size();
            q[shift] = f;
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
            a.pop_back();
            trim(a);
        }
        trim(q);
        return {std::move(q), std::move(a)};
    }

    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        trim(r);
        return r;
    }

    static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r = a;
        if (r.size() < b.size()) r.resize(b.size(), Rat(0));
        for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        trim(r);
        return r;
    }

    /// True when irreducibility was proved; throws when reducibility was.
    bool certify_irreducible() const {
        if (degree_ == 1) return true;
        SPARTS_CHECK(rational_roots(min_poly_).empty(),
                     "minimal polynomial has a rational root, so it is reducible");
        if (degree_ <= 3) return true;
        if (degree_ >= 5) return false;  // accepted with a warning flag
        // Degree 4, no linear factor: only monic integer quadratic
        // splittings (t^2 + a t + b)(t^2 + c t + d0) remain possible.
        const auto& mc = min_poly_.coeffs();
        const Int e0 = mc[0], e1 = mc[1], e2 = mc[2], e3 = mc[3];
        Int abs0 = abs_int(e0);
        // Decline the divisor scan (and only warn) for huge constant terms.
        if (!fits_int64(abs0) || abs0 > 1000000000000) return false;
        for (std::int64_t div = 1; Int(div) * div <= abs0; ++div) {
            if (abs0 % div != 0) continue;
            const Int codiv = abs0 / div;
            const std::vector<Int> divisors = {Int(div), Int(-div), codiv, Int(-codiv)};
            for (const Int& b : divisors) {
                Int d0 = e0 / b;
                if (b * d0 != e0) continue;
                // a + c = e3 and a c = e2 - b - d0.
                Int disc = e3 * e3 - 4 * (e2 - b - d0);
                Int root;
                if (!detail::is_perfect_square(disc, root)) continue;
                const std::vector<Int> sq_roots = {root, Int(-root)};
                for (const Int& r : sq_roots) {
                    if ((e3 + r) % 2 != 0) continue;
                    Int a = (e3 + r) / 2;
                    Int c = e3 - a;
                    if (a * c != e2 - b - d0) continue;
                    SPARTS_CHECK(a * d0 + b * c != e1,
                                 "minimal polynomial splits into two quadratics");
                }
            }
        }
        return true;
    }

    IntPoly min_poly_;
    unsigned degree_ = 0;
    bool certified_ = false;
};

/**
 * A validated automorphism group: the images sigma_i(t), the composition
 * table with table[i][j] = index of sigma_i o sigma_j, and the identity's
 * index. Produced only by validate_automorphisms.
 */
struct AutomorphismGroup {
    std::vector<FieldElement> images;
    std::vector<std::vector<unsigned>> table;
    unsigned identity = 0;
};

/**
 * Checks that the supplied images of t define a group of automorphisms of
 * order exactly deg K: each image a root of the minimal polynomial, images
 * pairwise distinct, the identity present, composition closed, and every
 * composition row and column a permutation. Rejections carry the reason.
 */
inline AutomorphismGroup validate_automorphisms(const NumberField& K,
                                                const std::vector<FieldElement>& images) {
    const unsigned d = K.degree();
    SPARTS_CHECK(images.size() == d,
                 "the automorphism group of a normal field has order equal to the degree");
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            SPARTS_CHECK(images[i] != images[j], "duplicate automorphism image");
    for (const FieldElement& img : images)
        SPARTS_CHECK(K.is_zero(K.eval_at(K.min_poly(), img)),
                     "an image of t is not a root of the minimal polynomial");

    AutomorphismGroup g;
    g.images = images;
    const FieldElement id = K.gen();
    bool id_found = false;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i] == id) {
            g.identity = static_cast<unsigned>(i);
            id_found = true;
        }
    }
    SPARTS_CHECK(id_found, "the identity automorphism t -> t is missing");

    g.table.assign(d, std::vector<unsigned>(d, 0));
    for (unsigned i = 0; i < d; ++i) {
        for (unsigned j = 0; j < d; ++j) {
            FieldElement comp = K.apply(images[i], images[j]);
            bool found = false;
            for (unsigned k = 0; k < d; ++k) {
                if (images[k] == comp) {
                    g.table[i][j] = k;
                    found = true;
                    break;
                }
            }
            SPARTS_CHECK(found, "composition leaves the supplied automorphism set");
        }
    }
    for (unsigned i = 0; i < d; ++i) {
        std::vector<bool> row(d, false), col(d, false);
        for (unsigned j = 0; j < d; ++j) {
            row[g.table[i][j]] = true;
            col[g.table[j][i]] = true;
        }
        for (unsigned j = 0; j < d; ++j)
            SPARTS_CHECK(row[j] && col[j], "composition table is not a group table");
    }
    return g;
}

/// A linear form a_1 X_1 + ... + a_m X_m with coefficients in K.
class LinearFormK {
public:
    LinearFormK(const NumberField& K, std::vector<FieldElement> coeffs)
        : coeffs_(std::move(coeffs)) {
        SPARTS_CHECK(!coeffs_.empty(), "a linear form needs at least one variable");
        bool nonzero = false;
        for (const FieldElement& c : coeffs_) {
            SPARTS_CHECK(c.size() == K.degree(), "coefficient from another field");
            if (!K.is_zero(c)) nonzero = true;
        }
        SPARTS_CHECK(nonzero, "a linear form must not vanish identically");
    }

    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    std::size_t vars() const { return coeffs_.size(); }

    bool operator==(const LinearFormK& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<FieldElement> coeffs_;
};

/// Coefficient-wise image of a linear form under t -> sigma_t.
inline LinearFormK apply_automorphism(const NumberField& K, const FieldElement& sigma_t,
                                      const LinearFormK& form) {
    std::vector<FieldElement> out;
    out.reserve(form.vars());
    for (const FieldElement& c : form.coeffs()) out.push_back(K.apply(sigma_t, c));
    return LinearFormK(K, std::move(out));
}

namespace detail {

/// Rank of a dense matrix over K by Gaussian elimination, destructively.
inline unsigned gauss_rank_over_K(const NumberField& K,
                                  std::vector<std::vector<FieldElement>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    unsigned rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (!K.is_zero(rows[r][col])) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (K.is_zero(rows[r][col])) continue;
            FieldElement f = K.div(rows[r][col], rows[rank][col]);
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] = K.sub(rows[r][c], K.mul(f, rows[rank][c]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Dimension over K of the span of the given forms.
inline unsigned rank_over_K(const NumberField& K, const std::vector<LinearFormK>& forms) {
    if (forms.empty()) return 0;
    const std::size_t m = forms[0].vars();
    std::vector<std::vector<FieldElement>> rows;
    rows.reserve(forms.size());
    for (const LinearFormK& f : forms) {
        SPARTS_CHECK(f.vars() == m, "all forms must share one variable count");
        rows.push_back(f.coeffs());
    }
    return detail::gauss_rank_over_K(K, rows);
}

/**
 * Rank of the forms restricted to the rational subspace spanned by the given
 * basis: substitute x = sum_i y_i a_i and take the rank in the y-variables.
 * The basis must be linearly independent over Q.
 */
inline unsigned rank_over_K(const NumberField& K, const std::vector<LinearFormK>& forms,
                            const std::vector<std::vector<Rat>>& subspace_basis) {
    SPARTS_CHECK(!subspace_basis.empty(), "restriction needs a non-empty basis");
    const std::size_t m = subspace_basis[0].size();
    SPARTS_CHECK(m >= 1, "ambient dimension must be positive");
    for (const auto& v : subspace_basis)
        SPARTS_CHECK(v.size() == m, "basis vectors must share one dimension");
    // Rational independence of the basis itself.
    {
        std::vector<std::vector<Rat>> rows = subspace_basis;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < m && rank < rows.size(); ++col) {
            std::size_t pivot = rows.size();
            for (std::size_t r = rank; r < rows.size(); ++r)
                if (rows[r][col] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot == rows.size()) continue;
            std::swap(rows[rank], rows[pivot]);
            for (std::size_t r = rank + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0) continue;
                Rat f = rows[r][col] / rows[rank][col];
                for (std::size_t c = col; c < m; ++c) rows[r][c] -= f * rows[rank][c];
            }
            ++rank;
        }
        SPARTS_CHECK(rank == subspace_basis.size(),
                     "restriction basis must be linearly independent");
    }
    if (forms.empty()) return 0;
    std::vector<std::vector<FieldElement>> rows;
    rows.reserve(forms.size());
    for (const LinearFormK& f : forms) {
        SPARTS_CHECK(f.vars() == m, "forms and basis must share one dimension");
        std::vector<FieldElement> row;
        row.reserve(subspace_basis.size());
        for (const auto& a : subspace_basis) {
            FieldElement e = K.zero();
            for (std::size_t i = 0; i < m; ++i)
                if (a[i] != 0) e = K.add(e, K.scale(a[i], f.coeffs()[i]));
            row.push_back(std::move(e));
        }
        rows.push_back(std::move(row));
    }
    return detail::gauss_rank_over_K(K, rows);
}

}  // namespace sparts

#pragma once

/**
 * @file lattice.hpp
 * @brief Rank-2 sublattices of Z^2 attached to congruence classes, Gauss
 *        reduction, exact areas of the regions {max(|x|,|y|) <= B, |F| <= M},
 *        and exact lattice-point counts with main-term/error reporting.
 */

#include "sparts/arith.hpp"
#include "sparts/congruence.hpp"
#include "sparts/integer.hpp"
#include "sparts/poly.hpp"
#include "sparts/primes.hpp"
#include "sparts/ratpoly.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace sparts {

using Vec2 = std::array<Int, 2>;
using Basis2 = std::array<Vec2, 2>;  // rows are generators

/// The sublattice {(x,y): y0 x = x0 y (mod h)} of a congruence class.
struct ClassLattice {
    Int h;
    std::pair<Int, Int> anchor;
    Basis2 basis;  // Hermite normal form [[a,b],[0,d]], 0 <= b < d, a d = h
    Int det;

    bool contains(const Int& x, const Int& y) const {
        return (anchor.second * x - anchor.first * y) % h == 0;
    }
};

namespace detail {

/// Extended gcd: returns g >= 0 with s a + t b = g.
inline void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    Int old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (!r.is_zero()) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r; r = tmp;
        tmp = old_s - q * s1; old_s = s1; s1 = tmp;
        tmp = old_t - q * t1; old_t = t1; t1 = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    g = old_r; s = old_s; t = old_t;
}

} // namespace detail

inline ClassLattice class_lattice(const Int& x0, const Int& y0, const Int& h) {
    SPARTS_CHECK(h > 0, "modulus must be positive");
    SPARTS_CHECK(gcd_int(x0, y0) == 1, "class anchor must be a primitive pair");
    // Hermite form from the generators (x0,y0), (h,0), (0,h).
    Int g, s, t;
    detail::ext_gcd(x0, h, g, s, t);
    Int a = g;                    // leading entry; a | h
    Int w = s * y0;               // second coordinate of the combined row
    // Rows with zero first coordinate left over after elimination.
    Int z1 = -(h / g) * s * y0;   // from (h,0) - (h/g) * (a, w)
    Int z2 = y0 * t * (h / g);    // from (x0,y0) - (x0/g) * (a, w)
    Int d = gcd_int(gcd_int(z1, z2), h);
    SPARTS_INVARIANT(d > 0 && a * d == h, "Hermite form must have determinant h");
    Int b = w % d;
    if (b < 0) b += d;
    ClassLattice out;
    out.h = h;
    out.anchor = {x0, y0};
    out.basis = {{{a, b}, {Int(0), d}}};
    out.det = h;
    SPARTS_INVARIANT(out.contains(x0, y0), "anchor must lie in its own lattice");
    SPARTS_INVARIANT(out.contains(a, b) && out.contains(0, d),
                     "basis rows must lie in the lattice");
    return out;
}

inline Int norm_sq(const Vec2& v) { return v[0] * v[0] + v[1] * v[1]; }

namespace detail {

/// Nearest integer to num/den (den > 0), ties toward even-agnostic floor.
inline Int round_nearest(const Int& num, const Int& den) {
    Int twice = 2 * num + den;
    Int q = twice / (2 * den);
    if (twice < 0 && twice % (2 * den) != 0) --q;
    return q;
}

inline Vec2 canonical_direction(Vec2 v) {
    if (v[0] < 0 || (v[0].is_zero() && v[1] < 0)) { v[0] = -v[0]; v[1] = -v[1]; }
    return v;
}

} // namespace detail

/// Lagrange-Gauss reduction; the first row of the result is a shortest
/// non-zero vector. Deterministic: signs canonicalized, ties broken
/// lexicographically.
struct ReducedBasis {
    Basis2 basis;
    Int shortest_norm_sq;
};

inline ReducedBasis gauss_reduce(const Basis2& input) {
    Vec2 u = input[0], v = input[1];
    SPARTS_CHECK(u[0] * v[1] - u[1] * v[0] != 0, "singular basis rejected");
    if (norm_sq(u) < norm_sq(v)) std::swap(u, v);
    while (true) {
        Int dot = u[0] * v[0] + u[1] * v[1];
        Int q = detail::round_nearest(dot, norm_sq(v));
        u[0] -= q * v[0];
        u[1] -= q * v[1];
        if (norm_sq(u) >= norm_sq(v)) break;
        std::swap(u, v);
    }
    Vec2 shortest = detail::canonical_direction(v);
    Vec2 second = detail::canonical_direction(u);
    if (norm_sq(shortest) == norm_sq(second) && second < shortest)
        std::swap(shortest, second);
    ReducedBasis out;
    out.basis = {shortest, second};
    out.shortest_norm_sq = norm_sq(shortest);
    return out;
}

/// The region {(x,y): max(|x|,|y|) <= B, |F(x,y)| <= M}.
struct RegionSpec {
    BinaryForm F;
    Rat B;
    Rat M;
};

namespace detail {

/// F(x, Y) as a polynomial in Y for exact rational x.
inline RatPoly section_poly(const BinaryForm& F, const Rat& x) {
    int n = F.degree();
    RatPoly out(static_cast<std::size_t>(n) + 1, Rat(0));
    Rat xp = 1;  // x^(n-i) built from the top
    for (int i = n; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = Rat(F.coeff(static_cast<std::size_t>(i))) * xp;
        xp *= x;
    }
    return out;
}

/// Total length of {y in [-B, B]: |F(x,y)| <= M}, exactly decided at rational
/// breakpoints; root positions carry at most `width` of uncertainty each.
inline double section_length(const BinaryForm& F, const Rat& x, const Rat& B,
                             const Rat& M, const Rat& width) {
    RatPoly base = section_poly(F, x);
    RatPoly upper = base, lower = base;
    if (upper.empty()) upper.push_back(Rat(0));
    if (lower.empty()) lower.push_back(Rat(0));
    upper[0] -= M;
    lower[0] += M;
    std::vector<Rat> cuts{-B, B};
    for (const RatPoly* g : {&upper, &lower})
        for (const auto& [lo, hi] : ratpoly::isolate_roots(*g, -B - 1, B + 1, width))
            cuts.push_back((lo + hi) / 2);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rat& lo = cuts[i];
        const Rat& hi = cuts[i + 1];
        if (hi <= -B || lo >= B) continue;
        Rat lo_c = lo < -B ? -B : lo;
        Rat hi_c = hi > B ? B : hi;
        if (hi_c <= lo_c) continue;
        Rat mid = (lo_c + hi_c) / 2;
        Rat val = ratpoly::eval(base, mid);
        if (val < 0) val = -val;
        if (val <= M) total += to_double(Rat(hi_c - lo_c));
    }
    return total;
}

struct SimpsonState {
    const BinaryForm* F;
    Rat B;
    Rat M;
    Rat width;
    long evals = 0;
    long eval_budget = 400000;

    double length(const Rat& x) {
        if (++evals > eval_budget)
            throw budget_error("area quadrature exceeded its evaluation budget");
        return section_length(*F, x, B, M, width);
    }
};

inline double adaptive_simpson(SimpsonState& st, const Rat& a, const Rat& b, double fa,
                               double fm, double fb, double whole, double eps,
                               int depth) {
    Rat m = (a + b) / 2;
    Rat lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = st.length(lm), frm = st.length(rm);
    double h6 = to_double(Rat(b - a)) / 12.0;
    double left = h6 * (fa + 4 * flm + fm);
    double right = h6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(st, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
           adaptive_simpson(st, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

} // namespace detail

/// Area of the region, within (approximately) relative tolerance tol.
inline double region_area(const RegionSpec& R, double tol = 1e-6) {
    SPARTS_CHECK(tol > 0, "tolerance must be positive");
    SPARTS_CHECK(R.B > 0 && R.M > 0, "region bounds must be positive");
    detail::SimpsonState st;
    st.F = &R.F;
    st.B = R.B;
    st.M = R.M;
    // Root uncertainty well below the quadrature tolerance.
    st.width = Rat(1, 1000000) * (R.B > 1 ? Rat(1) : R.B);
    // Rough pass to set the absolute error budget.
    double rough = 0.0;
    const int strips = 32;
    std::vector<double> vals(strips + 1);
    for (int i = 0; i <= strips; ++i) {
        Rat x = -R.B + Rat(2 * i, strips) * R.B;
        vals[static_cast<std::size_t>(i)] = st.length(x);
    }
    for (int i = 0; i < strips; ++i)
        rough += (vals[static_cast<std::size_t>(i)] + vals[static_cast<std::size_t>(i) + 1]) / 2.0 *
                 to_double(Rat(2 * R.B / strips));
    double eps = tol * std::max(rough, 1e-12);
    Rat a = -R.B, b = R.B;
    Rat m = 0;
    double fa = st.length(a), fm = st.length(m), fb = st.length(b);
    double whole = to_double(Rat(b - a)) / 6.0 * (fa + 4 * fm + fb);
    return detail::adaptive_simpson(st, a, b, fa, fm, fb, whole, eps, 36);
}

/// Exact point count of the region against a class lattice, with the
/// area-based main term and the observed error.
struct RegionCount {
    std::uint64_t count = 0;
    double main_term = 0.0;
    double error_observed = 0.0;
};

inline RegionCount count_region_points(const RegionSpec& R, const ClassLattice& L,
                                       bool prim_only, double area_tol = 1e-6,
                                       double enumeration_budget = 5e8) {
    SPARTS_CHECK(R.B > 0 && R.M > 0, "region bounds must be positive");
    if (to_double(R.B) * to_double(L.h) > enumeration_budget)
        throw budget_error("B*h exceeds the enumeration budget");
    const Int Bfloor = numerator(R.B) / denominator(R.B);
    const Int Mfloor = numerator(R.M) / denominator(R.M);
    std::uint64_t count = 0;
    const Int& h = L.h;
    const Int& x0 = L.anchor.first;
    const Int& y0 = L.anchor.second;
    Int g, s, t;
    detail::ext_gcd(detail::mod_nonneg(x0, h), h, g, s, t);
    const Int step = h / g;

    // 64-bit fast path: |F| over the box, with one Horner headroom factor,
    // stays within a guarded __int128. Integer points and integer M make the
    // comparisons |F(x,y)| <= M equivalent to |F(x,y)| <= floor(M), exactly.
    const unsigned n = static_cast<unsigned>(R.F.degree());
    Int value_cap = 0;
    {
        Int maxc = 0;
        for (const Int& c : R.F.coeffs()) maxc = std::max(maxc, abs_int(c));
        value_cap = Int(R.F.coeffs().size()) * maxc * pow_int(Bfloor + 1, n);
    }
    const bool fast = fits_int64(Bfloor) && fits_int64(step) &&
                      value_cap * (Bfloor + 1) < (Int(1) << 126);
    const bool accept_all_values = Mfloor >= value_cap;
    std::vector<__int128> coeffs128;
    __int128 m128 = 0;
    if (fast) {
        for (const Int& c : R.F.coeffs()) coeffs128.push_back(c.convert_to<__int128>());
        if (!accept_all_values) m128 = Mfloor.convert_to<__int128>();
    }
    std::vector<std::int64_t> fast_candidates;
    std::vector<Int> slow_candidates;

    for (Int x = -Bfloor; x <= Bfloor; ++x) {
        // Solve x0 * y = y0 * x (mod h): one progression of admissible y.
        Int c = detail::mod_nonneg(y0 * x, h);
        if (c % g != 0) continue;
        Int y1 = detail::mod_nonneg((c / g) * s, step);
        fast_candidates.clear();
        slow_candidates.clear();
        auto add_range = [&](Int from, Int to) {
            if (from < -Bfloor) from = -Bfloor;
            if (to > Bfloor) to = Bfloor;
            Int start = from + detail::mod_nonneg(y1 - from, step);
            if (fast) {
                std::int64_t st = to_int64(step);
                std::int64_t y_end = to_int64(to);
                for (std::int64_t y = start.convert_to<std::int64_t>(); y <= y_end;
                     y += st)
                    fast_candidates.push_back(y);
            } else {
                for (Int y = start; y <= to; y += step) slow_candidates.push_back(y);
            }
        };
        if (accept_all_values) {
            // Every point in the box qualifies on value; skip the geometry.
            add_range(-Bfloor, Bfloor);
        } else {
            // Coarse root isolation of F(x,.) = +-M carves [-B, B] into
            // strips; deep inside a wide strip the sign is settled by its
            // midpoint, and everything within distance 1 of a cut is tested
            // exactly below.
            RatPoly base = detail::section_poly(R.F, Rat(x));
            RatPoly upper = base, lower = base;
            if (upper.empty()) upper.push_back(Rat(0));
            if (lower.empty()) lower.push_back(Rat(0));
            upper[0] -= R.M;
            lower[0] += R.M;
            std::vector<Rat> cuts{-R.B, R.B};
            for (const RatPoly* gp : {&upper, &lower})
                for (const auto& [lo, hi] :
                     ratpoly::isolate_roots(*gp, -R.B - 1, R.B + 1, Rat(1)))
                    cuts.push_back((lo + hi) / 2);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                Rat lo = cuts[i] < -R.B ? -R.B : cuts[i];
                Rat hi = cuts[i + 1] > R.B ? R.B : cuts[i + 1];
                if (hi < lo) continue;
                Rat mid = (lo + hi) / 2;
                Rat val = ratpoly::eval(base, mid);
                if (val < 0) val = -val;
                if (val <= R.M)
                    add_range(numerator(lo) / denominator(lo) - 2,
                              numerator(hi) / denominator(hi) + 2);
            }
            for (const Rat& cut : cuts) {
                Int nearby = numerator(cut) / denominator(cut);
                add_range(nearby - 2, nearby + 2);
            }
        }
        if (fast) {
            std::sort(fast_candidates.begin(), fast_candidates.end());
            fast_candidates.erase(
                std::unique(fast_candidates.begin(), fast_candidates.end()),
                fast_candidates.end());
            std::int64_t x64 = to_int64(x);
            for (std::int64_t y : fast_candidates) {
                if (!accept_all_values) {
                    // F(x,y) = sum c_i x^(n-i) y^i via Horner in x.
                    __int128 v = coeffs128[0];
                    __int128 ypow = 1;
                    for (std::size_t i = 1; i <= n; ++i) {
                        ypow *= y;
                        v = v * x64 + coeffs128[i] * ypow;
                    }
                    if (v < 0) v = -v;
                    if (v > m128) continue;
                }
                if (prim_only && std::gcd(x64, y) != 1) continue;
                ++count;
            }
        } else {
            std::sort(slow_candidates.begin(), slow_candidates.end());
            slow_candidates.erase(
                std::unique(slow_candidates.begin(), slow_candidates.end()),
                slow_candidates.end());
            for (const Int& y : slow_candidates) {
                Int v = R.F.evaluate(x, y);
                if (v < 0) v = -v;
                if (v > Mfloor) continue;
                if (prim_only && gcd_int(x, y) != 1) continue;
                ++count;
            }
        }
    }
    RegionCount out;
    out.count = count;
    double area = region_area(R, area_tol);
    double main = area / to_double(L.det);
    if (prim_only) {
        double euler = 6.0 / (M_PI * M_PI);
        Int det = L.det;
        if (det > 1) {
            auto factors = factor_u64(static_cast<std::uint64_t>(to_int64(det)));
            for (const auto& [p, e] : factors)
                euler /= 1.0 + 1.0 / static_cast<double>(p);
        }
        main *= euler;
    }
    out.main_term = main;
    out.error_observed = std::abs(static_cast<double>(count) - main);
    return out;
}

} // namespace sparts

#pragma once

/**
 * @file congruence.hpp
 * @brief Root counting modulo prime powers by Hensel lift-and-branch,
 *        primitive-pair class counting for binary forms, and the derived
 *        stabilization data (g_p, qualifying prime subsets, residual
 *        exponents) used by the density counters.
 */

#include "sparts/integer.hpp"
#include "sparts/poly.hpp"
#include "sparts/primes.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace sparts {

namespace detail {

/// f(x) mod m with non-negative result; plain Horner over Int.
inline Int eval_mod(const IntPoly& f, const Int& x, const Int& m) {
    Int r = 0;
    const auto& c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        r = r * x + c[i];
        r %= m;
    }
    if (r < 0) r += m;
    return r;
}

/// f(x) mod p entirely in 64-bit arithmetic; p must fit u64.
inline std::uint64_t eval_mod_u64(const std::vector<std::uint64_t>& coeffs_mod_p,
                                  std::uint64_t x, std::uint64_t p) {
    std::uint64_t r = 0;
    for (std::size_t i = coeffs_mod_p.size(); i-- > 0;)
        r = (mulmod_u64(r, x, p) + coeffs_mod_p[i]) % p;
    return r;
}

inline std::vector<std::uint64_t> coeffs_mod_p(const IntPoly& f, std::uint64_t p) {
    std::vector<std::uint64_t> out;
    out.reserve(f.coeffs().size());
    for (const Int& c : f.coeffs()) {
        Int r = c % Int(p);
        if (r < 0) r += Int(p);
        out.push_back(static_cast<std::uint64_t>(to_int64(r)));
    }
    return out;
}

} // namespace detail

/// Roots of f modulo p^k together with the per-branch counts r(f, a, p^k)
/// (number of roots lying over each starting residue a modulo p).
struct RootCount {
    Int p;
    unsigned k = 0;
    Int modulus;                                     // p^k
    std::vector<Int> residues;                       // sorted, in [0, p^k)
    std::map<std::int64_t, std::size_t> per_branch;  // a -> r(f,a,p^k), zero rows omitted
};

/**
 * Lift-and-branch root counting: roots modulo p are found by scanning, then
 * each level j -> j+1 lifts a simple root uniquely (Hensel) and tests all p
 * candidates above a singular one. The polynomial must not vanish identically
 * modulo p, and p must stay below the scan budget.
 */
inline RootCount roots_mod_prime_power(const IntPoly& f, const Int& p, unsigned k,
                                       std::int64_t work_budget = 4000000) {
    SPARTS_CHECK(is_prime_checked(p), "modulus base must be prime");
    SPARTS_CHECK(k >= 1, "exponent k must be >= 1");
    SPARTS_CHECK(!f.is_zero(), "zero polynomial rejected");
    bool vanishes = true;
    for (const Int& c : f.coeffs())
        if (c % p != 0) vanishes = false;
    SPARTS_CHECK(!vanishes, "polynomial vanishes identically modulo p");

    auto pu = static_cast<std::uint64_t>(to_int64(p));
    if (static_cast<std::int64_t>(pu) > work_budget)
        throw budget_error("root scan modulo p exceeds the work budget");

    auto fmod = detail::coeffs_mod_p(f, pu);
    auto dmod = detail::coeffs_mod_p(f.derivative(), pu);

    std::vector<Int> roots;
    for (std::uint64_t a = 0; a < pu; ++a)
        if (detail::eval_mod_u64(fmod, a, pu) == 0) roots.push_back(Int(a));

    Int mod = p;
    std::int64_t spent = static_cast<std::int64_t>(pu);
    for (unsigned j = 1; j < k; ++j) {
        Int next_mod = mod * p;
        std::vector<Int> lifted;
        for (const Int& x : roots) {
            std::uint64_t xi = static_cast<std::uint64_t>(to_int64(x % Int(pu)));
            std::uint64_t fd = detail::eval_mod_u64(dmod, xi, pu);
            if (fd != 0) {
                // Unique Hensel lift: solve q + t f'(x) = 0 (mod p) where
                // q = f(x) / p^j.
                Int fx = detail::eval_mod(f, x, next_mod);
                Int q = fx / mod;
                std::uint64_t qu = static_cast<std::uint64_t>(to_int64(q));
                std::uint64_t inv = detail::powmod_u64(fd, pu - 2, pu);
                std::uint64_t t = detail::mulmod_u64(qu % pu, inv, pu);
                t = (pu - t) % pu;
                lifted.push_back(x + Int(t) * mod);
            } else {
                spent += static_cast<std::int64_t>(pu);
                if (spent > work_budget)
                    throw budget_error("singular branch enumeration exceeds the work budget");
                for (std::uint64_t t = 0; t < pu; ++t) {
                    Int cand = x + Int(t) * mod;
                    if (detail::eval_mod(f, cand, next_mod).is_zero())
                        lifted.push_back(std::move(cand));
                }
            }
        }
        roots = std::move(lifted);
        mod = next_mod;
    }

    RootCount out;
    out.p = p;
    out.k = k;
    out.modulus = mod;
    std::sort(roots.begin(), roots.end());
    out.residues = std::move(roots);
    for (const Int& x : out.residues) {
        Int a = x % p;
        ++out.per_branch[to_int64(a)];
    }
    // Every reported residue really is a root; cheap to re-check and worth it.
    for (const Int& x : out.residues)
        SPARTS_INVARIANT(detail::eval_mod(f, x, out.modulus).is_zero(),
                         "reported residue fails substitution check");
    return out;
}

/// Number of roots of f modulo p^k with no residue list materialized beyond
/// the lift frontier.
inline std::size_t count_roots_mod(const IntPoly& f, const Int& p, unsigned k) {
    return roots_mod_prime_power(f, p, k).residues.size();
}

namespace detail {

inline Int mod_nonneg(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Modular inverse for gcd(a, m) = 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int old_r = mod_nonneg(a, m), r = m;
    Int old_s = 1, s = 0;
    while (!r.is_zero()) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    SPARTS_INVARIANT(old_r == 1, "inverse of a non-unit requested");
    return mod_nonneg(old_s, m);
}

} // namespace detail

/**
 * Lexicographically smallest primitive pair in the class of (x0, y0) modulo
 * h = p^k, under the relation (x1,y1) ~ (x2,y2) iff x1 y2 = x2 y1 (mod h).
 * Closed form; no scanning.
 */
inline std::pair<Int, Int> canonical_class_rep(const Int& x0_in, const Int& y0_in,
                                               const Int& p, unsigned k) {
    Int h = pow_int(p, k);
    Int x0 = detail::mod_nonneg(x0_in, h);
    Int y0 = detail::mod_nonneg(y0_in, h);
    SPARTS_CHECK(gcd_int(gcd_int(x0_in, y0_in), h) == 1,
                 "class anchor must be primitive relative to h");
    if (y0 % p != 0) {
        // x = w y (mod h) with w = x0 / y0; the smallest x is the p-power
        // part of w, with the least matching y attached.
        Int w = detail::mod_nonneg(x0 * detail::inv_mod(y0, h), h);
        if (w.is_zero()) return {Int(0), Int(1)};
        unsigned v = 0;
        Int wp = w;
        while (wp % p == 0) {
            wp /= p;
            ++v;
        }
        // 0 < w < h forces v < k, so h / d is a positive power of p.
        Int d = pow_int(p, v);
        Int hd = h / d;
        SPARTS_INVARIANT(hd > 1, "p-power part of a unit class exhausts the modulus");
        Int y = detail::inv_mod(wp, hd);
        return {d, y};
    }
    // p | y0 forces x0 invertible; class is x = 1 against y = y0 / x0.
    Int u = detail::mod_nonneg(y0 * detail::inv_mod(x0, h), h);
    return {Int(1), u};
}

/// Class key: a complete invariant of the class of a primitive pair mod p^k.
/// First component 0 means "affine" z = x/y, 1 means "infinite" w = y/x with
/// p | w.
inline std::pair<int, Int> class_key(const Int& x, const Int& y, const Int& p,
                                     const Int& h) {
    if (gcd_int(y, p) == 1)
        return {0, detail::mod_nonneg(x * detail::inv_mod(detail::mod_nonneg(y, h), h), h)};
    return {1, detail::mod_nonneg(y * detail::inv_mod(detail::mod_nonneg(x, h), h), h)};
}

/// Count of primitive-pair classes modulo p^k solving F = 0, plus one
/// canonical representative per class.
struct PrimClassCount {
    Int p;
    unsigned k = 0;
    Int modulus;
    std::size_t count = 0;
    std::vector<std::pair<Int, Int>> representatives;  // sorted lexicographically
};

namespace detail {

/// A unimodular U with F(U(1,0)) != 0 and F(U(0,1)) != 0, found among small
/// primitive first columns completed by the extended gcd.
inline std::array<std::array<Int, 2>, 2> nondegenerate_transform(const BinaryForm& F) {
    int n = F.degree();
    for (std::int64_t radius = 1; radius <= 64; ++radius) {
        for (std::int64_t a = -radius; a <= radius; ++a) {
            for (std::int64_t c = -radius; c <= radius; ++c) {
                if (std::max(std::abs(a), std::abs(c)) != radius && radius > 1) continue;
                if (std::gcd(a, c) != 1) continue;
                if (F.evaluate(Int(a), Int(c)).is_zero()) continue;
                // Complete (a, c) to a unimodular matrix, then slide the
                // second column along the first until F is non-zero there too.
                std::int64_t b0 = 0, d0 = 0;
                // Extended gcd for a d - c b = 1.
                {
                    std::int64_t old_r = a, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
                    while (r != 0) {
                        std::int64_t q = old_r / r;
                        std::int64_t tmp = old_r - q * r;
                        old_r = r; r = tmp;
                        tmp = old_s - q * s; old_s = s; s = tmp;
                        tmp = old_t - q * t; old_t = t; t = tmp;
                    }
                    // old_r = +-1 = old_s * a + old_t * c.
                    if (old_r == 1) { d0 = old_s; b0 = -old_t; }
                    else { d0 = -old_s; b0 = old_t; }
                }
                for (std::int64_t shift = 0; shift <= 2 * n + 1; ++shift) {
                    std::int64_t t = (shift % 2 == 0) ? shift / 2 : -(shift + 1) / 2;
                    Int b = Int(b0) + Int(t) * a;
                    Int d = Int(d0) + Int(t) * c;
                    if (!F.evaluate(b, d).is_zero())
                        return {{{Int(a), b}, {Int(c), d}}};
                }
            }
        }
    }
    invariant_failure("no nondegenerate unimodular transform found");
}

} // namespace detail

inline PrimClassCount prim_classes_mod_prime_power(const BinaryForm& F, const Int& p,
                                                   unsigned k,
                                                   std::int64_t work_budget = 4000000) {
    SPARTS_CHECK(binary_discriminant(F) != 0, "form must have non-zero discriminant");
    SPARTS_CHECK(k >= 1, "exponent k must be >= 1");
    Int content = 0;
    for (const Int& c : F.coeffs()) content = gcd_int(content, c);
    SPARTS_CHECK(content % p != 0,
                 "form content divisible by p; divide the power of p out first");

    auto U = detail::nondegenerate_transform(F);
    BinaryForm G = unimodular_transform(F, U);
    SPARTS_INVARIANT(!G.coeff(0).is_zero() && !G.coeff(static_cast<std::size_t>(G.degree())).is_zero(),
                     "pre-transform failed to clear the boundary roots");

    IntPoly g = G.dehomogenize_x();
    IntPoly gstar = G.dehomogenize_y();
    RootCount affine = roots_mod_prime_power(g, p, k, work_budget);
    RootCount infinite = roots_mod_prime_power(gstar, p, k, work_budget);

    PrimClassCount out;
    out.p = p;
    out.k = k;
    out.modulus = affine.modulus;

    std::vector<std::pair<Int, Int>> reps;
    for (const Int& z : affine.residues) {
        Int x = U[0][0] * z + U[0][1];
        Int y = U[1][0] * z + U[1][1];
        reps.push_back(canonical_class_rep(x, y, p, k));
    }
    for (const Int& z : infinite.residues) {
        if (z % p != 0) continue;  // classes at infinity have p | z only
        Int x = U[0][0] + U[0][1] * z;
        Int y = U[1][0] + U[1][1] * z;
        reps.push_back(canonical_class_rep(x, y, p, k));
    }
    std::sort(reps.begin(), reps.end());
    SPARTS_INVARIANT(std::adjacent_find(reps.begin(), reps.end()) == reps.end(),
                     "affine and infinite class families must stay disjoint");
    for (const auto& [x, y] : reps)
        SPARTS_INVARIANT(detail::mod_nonneg(F.evaluate(x, y), out.modulus).is_zero(),
                         "class representative fails substitution check");
    out.count = reps.size();
    out.representatives = std::move(reps);
    return out;
}

/// g_p: the exact power of p dividing a non-zero discriminant.
inline unsigned g_p_of(const Int& disc, const Int& p) {
    SPARTS_CHECK(!disc.is_zero(), "zero discriminant rejected");
    return padic_valuation(disc, p);
}

namespace detail {

/// Solvability of f = 0 (mod p^u), honest about content: the power of p in
/// the content shifts the level before lift-and-branch runs.
inline bool solvable_mod(const IntPoly& f, const Int& p, unsigned u,
                         std::int64_t work_budget) {
    if (u == 0) return true;
    Valuation cv = split_valuation(poly_content(f), p);
    if (cv.exponent >= u) return true;
    unsigned level = u - cv.exponent;
    std::vector<Int> reduced = f.coeffs();
    Int pe = pow_int(p, cv.exponent);
    for (Int& c : reduced) c /= pe;
    return !roots_mod_prime_power(IntPoly(std::move(reduced)), p, level, work_budget)
                .residues.empty();
}

} // namespace detail

/// The subset S' of primes admitting a solution at level g_p + 1, plus the
/// residual exponents a_p (largest solvable level, necessarily <= g_p) for
/// the primes outside S'.
struct SPrimeSubset {
    PrimeSet s_prime;
    std::map<std::int64_t, unsigned> g_p;                 // for every p in S
    std::map<std::int64_t, unsigned> residual_exponents;  // only p outside S'
};

inline SPrimeSubset s_prime_subset(const IntPoly& f, const PrimeSet& S,
                                   std::int64_t work_budget = 4000000) {
    Int disc = poly_discriminant(f);
    SPARTS_CHECK(!disc.is_zero(), "zero discriminant rejected");
    SPrimeSubset out;
    std::vector<std::int64_t> qualifying;
    for (std::size_t i = 0; i < S.size(); ++i) {
        Int p(S[i]);
        unsigned g = g_p_of(disc, p);
        out.g_p[S[i]] = g;
        if (detail::solvable_mod(f, p, g + 1, work_budget)) {
            qualifying.push_back(S[i]);
        } else {
            unsigned a = 0;
            for (unsigned u = g; u >= 1; --u) {
                if (detail::solvable_mod(f, p, u, work_budget)) {
                    a = u;
                    break;
                }
            }
            out.residual_exponents[S[i]] = a;
        }
    }
    out.s_prime = PrimeSet(qualifying);
    return out;
}

inline SPrimeSubset s_prime_subset(const BinaryForm& F, const PrimeSet& S,
                                   std::int64_t work_budget = 4000000) {
    Int disc = binary_discriminant(F);
    SPARTS_CHECK(!disc.is_zero(), "zero discriminant rejected");
    SPrimeSubset out;
    std::vector<std::int64_t> qualifying;
    auto solvable = [&](const Int& p, unsigned u) {
        if (u == 0) return true;
        return prim_classes_mod_prime_power(F, p, u, work_budget).count > 0;
    };
    for (std::size_t i = 0; i < S.size(); ++i) {
        Int p(S[i]);
        unsigned g = g_p_of(disc, p);
        out.g_p[S[i]] = g;
        if (solvable(p, g + 1)) {
            qualifying.push_back(S[i]);
        } else {
            unsigned a = 0;
            for (unsigned u = g; u >= 1; --u) {
                if (solvable(p, u)) {
                    a = u;
                    break;
                }
            }
            out.residual_exponents[S[i]] = a;
        }
    }
    out.s_prime = PrimeSet(qualifying);
    return out;
}

/// Root-count table r(., p^k) for k = 1..k_max with the stabilization verdict
/// (counts constant from g_p + 1 on).
struct StabilizationReport {
    unsigned g_p = 0;
    std::vector<std::size_t> counts;  // counts[k-1] is the count at level k
    std::vector<std::map<std::int64_t, std::size_t>> per_branch;  // polynomial case only
    bool stable = false;
};

inline StabilizationReport stabilization_report(const IntPoly& f, const Int& p,
                                                unsigned k_max,
                                                std::int64_t work_budget = 4000000) {
    Int disc = poly_discriminant(f);
    SPARTS_CHECK(!disc.is_zero(), "zero discriminant rejected");
    StabilizationReport out;
    out.g_p = g_p_of(disc, p);
    SPARTS_CHECK(k_max >= out.g_p + 1, "k_max must reach at least g_p + 1");
    for (unsigned k = 1; k <= k_max; ++k) {
        RootCount rc = roots_mod_prime_power(f, p, k, work_budget);
        out.counts.push_back(rc.residues.size());
        out.per_branch.push_back(rc.per_branch);
    }
    out.stable = true;
    for (unsigned k = out.g_p + 1; k <= k_max; ++k)
        if (out.per_branch[k - 1] != out.per_branch[out.g_p])
            out.stable = false;
    return out;
}

inline StabilizationReport stabilization_report(const BinaryForm& F, const Int& p,
                                                unsigned k_max,
                                                std::int64_t work_budget = 4000000) {
    Int disc = binary_discriminant(F);
    SPARTS_CHECK(!disc.is_zero(), "zero discriminant rejected");
    StabilizationReport out;
    out.g_p = g_p_of(disc, p);
    SPARTS_CHECK(k_max >= out.g_p + 1, "k_max must reach at least g_p + 1");
    for (unsigned k = 1; k <= k_max; ++k)
        out.counts.push_back(prim_classes_mod_prime_power(F, p, k, work_budget).count);
    out.stable = true;
    for (unsigned k = out.g_p + 1; k <= k_max; ++k)
        if (out.counts[k - 1] != out.counts[out.g_p])
            out.stable = false;
    return out;
}

} // namespace sparts

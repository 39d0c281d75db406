#pragma once

/**
 * @file density.hpp
 * @brief Exact counters for arguments whose form value has a large S-part:
 *        polynomial, binary-form and multivariate counters (each with a
 *        sieved fast path over S-numbers and a naive oracle), the
 *        weighted-tuple window counter, the small-cofactor point counter, and
 *        grid reports against the expected growth laws.
 */

#include "sparts/arith.hpp"
#include "sparts/congruence.hpp"
#include "sparts/integer.hpp"
#include "sparts/multipoly.hpp"
#include "sparts/poly.hpp"
#include "sparts/primes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sparts {

/// One S-number h = prod p_i^{a_i} with its exponent tuple (aligned with the
/// generating prime set).
struct SNumber {
    Int value;
    std::vector<unsigned> exponents;
};

/**
 * All S-numbers <= limit in increasing order. A min-heap over exponent tuples
 * reaches every S-number exactly once: a popped entry only spawns children by
 * multiplying in primes at or after the last prime it used.
 */
inline std::vector<SNumber> s_numbers_upto(const PrimeSet& S, const Int& limit,
                                           std::size_t max_count = 2000000) {
    std::vector<SNumber> out;
    if (limit < 1) return out;
    struct Entry {
        Int value;
        std::vector<unsigned> exponents;
        std::size_t next_prime;
        bool operator>(const Entry& o) const { return value > o.value; }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({Int(1), std::vector<unsigned>(S.size(), 0), 0});
    while (!heap.empty()) {
        Entry e = heap.top();
        heap.pop();
        if (out.size() >= max_count)
            throw budget_error("S-number enumeration exceeds its budget");
        for (std::size_t j = e.next_prime; j < S.size(); ++j) {
            Int child = e.value * S[j];
            if (child > limit) continue;
            auto exps = e.exponents;
            ++exps[j];
            heap.push({std::move(child), std::move(exps), j});
        }
        out.push_back({std::move(e.value), std::move(e.exponents)});
    }
    return out;
}

/// Exact test [value]_S^v >= |value|^u for non-zero value; this is the
/// qualifying condition with exponent u/v, decided without floating point.
inline bool svalue_qualifies(const Int& value, const PrimeSet& S, unsigned u,
                             unsigned v) {
    SPARTS_CHECK(value != 0, "zero value excluded from the S-part condition");
    return compare_pow(s_part(value, S), v, abs_int(value), u) >= 0;
}

namespace detail {

struct EpsUV {
    unsigned u = 0;
    unsigned v = 0;
};

/// Splits a positive rational exponent into (numerator, denominator); both
/// stay small because they feed exact integer powers.
inline EpsUV eps_exponents(const Rat& eps) {
    SPARTS_CHECK(eps > 0, "epsilon must be positive");
    Int nu = numerator(eps), de = denominator(eps);
    SPARTS_CHECK(nu <= 1000000 && de <= 1000000,
                 "epsilon numerator/denominator out of range");
    return {static_cast<unsigned>(to_int64(nu)), static_cast<unsigned>(to_int64(de))};
}

inline Int int_from_u128(unsigned __int128 x) {
    Int r = static_cast<std::uint64_t>(x >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(x);
    return r;
}

/// Exact h^v >= val^u over 128-bit inputs, using saturating powers with an
/// arbitrary-precision fallback when both sides saturate.
inline bool power_ge_u128(unsigned __int128 h, unsigned v, unsigned __int128 val,
                          unsigned u) {
    unsigned __int128 pa = pow_sat(h, v);
    unsigned __int128 pb = pow_sat(val, u);
    bool sa = pa == kSaturated, sb = pb == kSaturated;
    if (!sa && !sb) return pa >= pb;
    if (sa != sb) return sa;
    return compare_pow(int_from_u128(h), v, int_from_u128(val), u) >= 0;
}

/// Smallest integer radius beyond which |f| is strictly increasing in |x|:
/// a Cauchy bound covering the roots of both f and f'.
inline Int monotone_radius(const IntPoly& f) {
    const auto& c = f.coeffs();
    std::size_t n = c.size() - 1;
    Int lead = abs_int(c[n]);
    Int maxr = 0;
    for (std::size_t i = 0; i < n; ++i) maxr = std::max(maxr, abs_int(c[i]));
    return 2 + maxr / lead;
}

} // namespace detail

/// Reference double loop: every x in [-B, B] gets the exact predicate.
inline std::uint64_t count_N_poly_naive(const IntPoly& f, const PrimeSet& S,
                                        const Rat& eps, const Int& B) {
    auto [u, v] = detail::eps_exponents(eps);
    SPARTS_CHECK(!f.is_zero(), "zero polynomial rejected");
    SPARTS_CHECK(B >= 0, "box bound must be non-negative");
    std::uint64_t count = 0;
    for (Int x = -B; x <= B; ++x) {
        Int val = f.evaluate(x);
        if (val == 0) continue;
        if (svalue_qualifies(val, S, u, v)) ++count;
    }
    return count;
}

/**
 * Sieved counter: #{|x| <= B : f(x) != 0, [f(x)]_S^v >= |f(x)|^u}.
 *
 * For every S-number h up to max|f| over the box, the solutions of
 * f = 0 (mod h) — one congruence class per CRT combination of root lifts,
 * with content-of-f levels divided out — are exactly the x with h dividing
 * the S-part of f(x). Marking a visited x whenever h^v >= |f(x)|^u is sound
 * (the true S-part is >= h) and complete (x is reached when h is the exact
 * S-part). Each congruence class is walked fully over the core |x| <= R and
 * outward past R only until the first failure, where |f| is already strictly
 * increasing.
 */
inline std::uint64_t count_N_poly(const IntPoly& f, const PrimeSet& S, const Rat& eps,
                                  const Int& B, std::size_t snumber_budget = 2000000) {
    auto [u, v] = detail::eps_exponents(eps);
    SPARTS_CHECK(!f.is_zero(), "zero polynomial rejected");
    SPARTS_CHECK(B >= 0, "box bound must be non-negative");
    SPARTS_CHECK(fits_int64(2 * B + 1), "box bound out of the enumerable range");
    if (f.degree() == 0)
        return svalue_qualifies(f.coeffs()[0], S, u, v)
                   ? static_cast<std::uint64_t>(to_int64(2 * B + 1))
                   : 0;

    Int hmax = 0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        hmax += abs_int(f.coeffs()[i]) * pow_int(B, static_cast<unsigned long>(i));
    if (hmax == 0) return 0;  // only possible at B = 0 with f(0) = 0

    // Powers of S-primes inside the content shift the class levels.
    Int content = poly_content(f);
    std::vector<unsigned> delta(S.size(), 0);
    Int shift = 1;
    for (std::size_t i = 0; i < S.size(); ++i) {
        delta[i] = split_valuation(content, Int(S[i])).exponent;
        shift *= pow_int(Int(S[i]), static_cast<unsigned long>(delta[i]));
    }
    std::vector<Int> stripped = f.coeffs();
    for (Int& c : stripped) c /= shift;
    const IntPoly f0(std::move(stripped));

    const Int R = detail::monotone_radius(f);
    const Int Rc = std::min(B, R);

    std::map<std::pair<std::size_t, unsigned>, std::vector<Int>> root_cache;
    auto roots_for = [&](std::size_t i, unsigned level) -> const std::vector<Int>& {
        auto key = std::make_pair(i, level);
        auto it = root_cache.find(key);
        if (it != root_cache.end()) return it->second;
        auto rc = roots_mod_prime_power(f0, Int(S[i]), level);
        return root_cache.emplace(key, std::move(rc.residues)).first->second;
    };

    std::unordered_set<std::int64_t> qualified;
    auto visit = [&](const Int& x, const Int& h) {
        Int val = f.evaluate(x);
        if (val == 0) return false;
        bool pass = compare_pow(h, v, abs_int(val), u) >= 0;
        if (pass) qualified.insert(to_int64(x));
        return pass;
    };

    for (const SNumber& sn : s_numbers_upto(S, hmax, snumber_budget)) {
        Int hprime = 1;
        std::vector<Int> residues{Int(0)};
        bool feasible = true;
        for (std::size_t i = 0; i < S.size() && feasible; ++i) {
            unsigned a = sn.exponents[i];
            unsigned level = a > delta[i] ? a - delta[i] : 0;
            if (level == 0) continue;
            const auto& pr = roots_for(i, level);
            if (pr.empty()) {
                feasible = false;
                break;
            }
            Int pm = pow_int(Int(S[i]), level);
            Int minv = detail::inv_mod(detail::mod_nonneg(hprime, pm), pm);
            std::vector<Int> next;
            next.reserve(residues.size() * pr.size());
            for (const Int& r : residues)
                for (const Int& rho : pr)
                    next.push_back(r + hprime * detail::mod_nonneg((rho - r) * minv, pm));
            residues = std::move(next);
            hprime *= pm;
            SPARTS_CHECK(residues.size() <= 100000, "congruence class fan-out exceeds its cap");
        }
        if (!feasible) continue;
        const Int& h = sn.value;
        for (const Int& rho : residues) {
            // Core: every admissible x with |x| <= Rc, unconditionally.
            for (Int x = -Rc + detail::mod_nonneg(rho + Rc, hprime); x <= Rc; x += hprime)
                visit(x, h);
            if (B > Rc) {
                // Right tail: ascending until the first failure.
                for (Int x = Rc + 1 + detail::mod_nonneg(rho - Rc - 1, hprime); x <= B;
                     x += hprime)
                    if (!visit(x, h)) break;
                // Left tail: descending until the first failure.
                for (Int x = -Rc - 1 - detail::mod_nonneg(-Rc - 1 - rho, hprime); x >= -B;
                     x -= hprime)
                    if (!visit(x, h)) break;
            }
        }
    }
    return qualified.size();
}

/// Reference double loop over primitive pairs with max(|x|, |y|) <= B.
inline std::uint64_t count_N_binary_naive(const BinaryForm& F, const PrimeSet& S,
                                          const Rat& eps, const Int& B) {
    auto [u, v] = detail::eps_exponents(eps);
    SPARTS_CHECK(B >= 0, "box bound must be non-negative");
    std::uint64_t count = 0;
    for (Int x = -B; x <= B; ++x)
        for (Int y = -B; y <= B; ++y) {
            if (gcd_int(x, y) != 1) continue;
            Int val = F.evaluate(x, y);
            if (val == 0) continue;
            if (svalue_qualifies(val, S, u, v)) ++count;
        }
    return count;
}

/**
 * Sieved counter over primitive pairs: for every S-number h, the primitive
 * solutions of F = 0 (mod h) form finitely many projective congruence
 * classes (CRT products of the per-prime-power class lists); walking each
 * class over the box and marking pairs with h^v >= |F(x,y)|^u counts exactly
 * the qualifying pairs, by the same soundness/completeness argument as the
 * polynomial counter.
 */
inline std::uint64_t count_N_binary(const BinaryForm& F, const PrimeSet& S,
                                    const Rat& eps, const Int& B,
                                    std::size_t snumber_budget = 2000000,
                                    std::int64_t class_budget = 4000000) {
    auto [u, v] = detail::eps_exponents(eps);
    SPARTS_CHECK(F.degree() >= 1, "constant forms rejected");
    SPARTS_CHECK(binary_discriminant(F) != 0, "form must have non-zero discriminant");
    SPARTS_CHECK(B >= 0 && B < (Int(1) << 31), "box bound out of the enumerable range");
    if (B == 0) return 0;
    const std::int64_t B64 = to_int64(B);
    const auto n = static_cast<unsigned>(F.degree());

    Int sumc = 0;
    for (const Int& c : F.coeffs()) sumc += abs_int(c);
    const Int hmax = sumc * pow_int(B, n);

    Int content = 0;
    for (const Int& c : F.coeffs()) content = gcd_int(content, c);
    std::vector<unsigned> delta(S.size(), 0);
    Int shift = 1;
    for (std::size_t i = 0; i < S.size(); ++i) {
        delta[i] = split_valuation(content, Int(S[i])).exponent;
        shift *= pow_int(Int(S[i]), static_cast<unsigned long>(delta[i]));
    }
    std::vector<Int> stripped = F.coeffs();
    for (Int& c : stripped) c /= shift;
    const BinaryForm F0(std::move(stripped));

    std::map<std::pair<std::size_t, unsigned>, std::vector<std::pair<Int, Int>>> cache;
    auto classes_for = [&](std::size_t i, unsigned level)
        -> const std::vector<std::pair<Int, Int>>& {
        auto key = std::make_pair(i, level);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto pc = prim_classes_mod_prime_power(F0, Int(S[i]), level, class_budget);
        return cache.emplace(key, std::move(pc.representatives)).first->second;
    };

    // Fast exact evaluation: Horner partial sums stay below hmax, so one
    // extra factor of (B+1) of headroom keeps __int128 exact.
    const bool fast_eval = hmax * (B + 1) < (Int(1) << 126);
    std::vector<__int128> coeffs128;
    if (fast_eval)
        for (const Int& c : F.coeffs()) coeffs128.push_back(c.convert_to<__int128>());

    std::unordered_set<std::uint64_t> qualified;
    const auto W = static_cast<std::uint64_t>(2 * B64 + 1);
    auto pack = [&](std::int64_t x, std::int64_t y) {
        return static_cast<std::uint64_t>(x + B64) * W + static_cast<std::uint64_t>(y + B64);
    };

    const bool h_small = (hmax >> 126) == 0;
    unsigned __int128 h128 = 0;

    auto consider = [&](std::int64_t x, std::int64_t y, const Int& h) {
        bool pass;
        if (fast_eval && h_small) {
            __int128 val = coeffs128[0];
            __int128 ypow = 1;
            for (std::size_t i = 1; i <= n; ++i) {
                ypow *= y;
                val = val * x + coeffs128[i] * ypow;
            }
            if (val < 0) val = -val;
            if (val == 0) return;
            pass = detail::power_ge_u128(h128, v, static_cast<unsigned __int128>(val), u);
        } else {
            Int val = F.evaluate(Int(x), Int(y));
            if (val == 0) return;
            pass = compare_pow(h, v, abs_int(val), u) >= 0;
        }
        if (pass && std::gcd(x, y) == 1) qualified.insert(pack(x, y));
    };

    for (const SNumber& sn : s_numbers_upto(S, hmax, snumber_budget)) {
        const Int& h = sn.value;
        Int hprime = 1;
        std::vector<std::pair<Int, Int>> anchors{{Int(1), Int(0)}};
        bool feasible = true;
        for (std::size_t i = 0; i < S.size() && feasible; ++i) {
            unsigned a = sn.exponents[i];
            unsigned level = a > delta[i] ? a - delta[i] : 0;
            if (level == 0) continue;
            const auto& reps = classes_for(i, level);
            if (reps.empty()) {
                feasible = false;
                break;
            }
            Int pm = pow_int(Int(S[i]), level);
            Int minv = detail::inv_mod(detail::mod_nonneg(hprime, pm), pm);
            std::vector<std::pair<Int, Int>> next;
            next.reserve(anchors.size() * reps.size());
            for (const auto& [ax, ay] : anchors)
                for (const auto& [rx, ry] : reps)
                    next.emplace_back(ax + hprime * detail::mod_nonneg((rx - ax) * minv, pm),
                                      ay + hprime * detail::mod_nonneg((ry - ay) * minv, pm));
            anchors = std::move(next);
            hprime *= pm;
            SPARTS_CHECK(anchors.size() <= 100000, "class fan-out exceeds its cap");
        }
        if (!feasible) continue;
        if (h_small) h128 = h.convert_to<unsigned __int128>();

        for (const auto& [x0, y0] : anchors) {
            // Solve x0 * y = y0 * x (mod hprime) column by column; one
            // progression of admissible y per admissible column.
            if (fits_int64(hprime) && hprime < (Int(1) << 62)) {
                std::int64_t hp = to_int64(hprime);
                std::int64_t x0r = to_int64(detail::mod_nonneg(x0, hprime));
                std::int64_t y0r = to_int64(detail::mod_nonneg(y0, hprime));
                std::int64_t g = std::gcd(x0r, hp);
                std::int64_t step = hp / g;
                std::int64_t inv = step > 1
                                       ? to_int64(detail::inv_mod(Int(x0r / g), Int(step)))
                                       : 0;
                for (std::int64_t x = -B64; x <= B64; ++x) {
                    auto c = static_cast<std::int64_t>(
                        (static_cast<__int128>(y0r) * x % hp + hp) % hp);
                    if (c % g != 0) continue;
                    auto y1 = static_cast<std::int64_t>(
                        static_cast<__int128>(c / g) * inv % step);
                    std::int64_t yfirst = -B64 + (y1 + B64) % step;
                    for (std::int64_t y = yfirst; y <= B64; y += step) consider(x, y, h);
                }
            } else {
                Int g = gcd_int(detail::mod_nonneg(x0, hprime), hprime);
                Int step = hprime / g;
                Int inv = step > 1 ? detail::inv_mod(detail::mod_nonneg(x0, hprime) / g, step)
                                   : Int(0);
                for (std::int64_t x = -B64; x <= B64; ++x) {
                    Int c = detail::mod_nonneg(y0 * x, hprime);
                    if (c % g != 0) continue;
                    Int y1 = detail::mod_nonneg((c / g) * inv, step);
                    Int yfirst = -B + detail::mod_nonneg(y1 + B, step);
                    for (Int yy = yfirst; yy <= B; yy += step) consider(x, to_int64(yy), h);
                }
            }
        }
    }
    return qualified.size();
}

/**
 * Exact counter over primitive m-tuples with sup-norm <= B; pure enumeration
 * guarded by a budget (vanishing points never qualify).
 */
inline std::uint64_t count_N_decomp(const MultiPoly& F, const PrimeSet& S,
                                    const Rat& eps, const Int& B,
                                    double enumeration_budget = 5e8) {
    auto [u, v] = detail::eps_exponents(eps);
    SPARTS_CHECK(F.vars() >= 1, "at least one variable required");
    SPARTS_CHECK(B >= 0, "box bound must be non-negative");
    if (B == 0) return 0;
    double cost = std::pow(2.0 * to_double(B) + 1.0, F.vars());
    if (cost > enumeration_budget)
        throw budget_error("tuple enumeration exceeds the budget");

    std::uint64_t count = 0;
    std::vector<Int> x(F.vars(), -B);
    while (true) {
        Int g = 0;
        for (const Int& xi : x) g = gcd_int(g, xi);
        if (g == 1) {
            Int val = F.evaluate(x);
            if (val != 0 && svalue_qualifies(val, S, u, v)) ++count;
        }
        std::size_t i = 0;
        while (i < x.size() && x[i] == B) x[i++] = -B;
        if (i == x.size()) break;
        ++x[i];
    }
    return count;
}

/// Left-to-right weighted sum; the single shared arithmetic path keeps the
/// sieved and naive window counters in exact floating-point agreement.
inline double weighted_sum(const std::vector<double>& alphas,
                           const std::vector<std::int64_t>& u) {
    double s = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i)
        s += alphas[i] * static_cast<double>(u[i]);
    return s;
}

/// Reference odometer over the full candidate box for the window
/// A <= sum(alpha_i u_i) <= A + 2 sum(alpha_i).
inline std::uint64_t count_weighted_tuples_naive(const std::vector<double>& alphas,
                                                 double A) {
    SPARTS_CHECK(!alphas.empty(), "at least one weight required");
    for (double a : alphas) SPARTS_CHECK(a > 0, "weights must be positive");
    SPARTS_CHECK(A >= 0, "window start must be non-negative");
    double total = 0;
    for (double a : alphas) total += a;
    const double hi = A + 2 * total;
    std::vector<std::int64_t> bound(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        bound[i] = static_cast<std::int64_t>(std::floor(hi / alphas[i])) + 2;
    std::uint64_t count = 0;
    std::vector<std::int64_t> u(alphas.size(), 0);
    while (true) {
        double s = weighted_sum(alphas, u);
        if (s >= A && s <= hi) ++count;
        std::size_t i = 0;
        while (i < u.size() && u[i] == bound[i]) u[i++] = 0;
        if (i == u.size()) break;
        ++u[i];
    }
    return count;
}

/**
 * Window counter with pruning: branches whose prefix already exceeds the
 * window top are cut (weights are positive, so extensions only grow), and the
 * last coordinate is reduced to a short candidate range around the window,
 * each candidate re-checked with the shared predicate.
 */
inline std::uint64_t count_weighted_tuples(const std::vector<double>& alphas, double A) {
    SPARTS_CHECK(!alphas.empty(), "at least one weight required");
    for (double a : alphas) SPARTS_CHECK(a > 0, "weights must be positive");
    SPARTS_CHECK(A >= 0, "window start must be non-negative");
    double total = 0;
    for (double a : alphas) total += a;
    const double hi = A + 2 * total;

    std::uint64_t count = 0;
    std::vector<std::int64_t> u(alphas.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i + 1 == alphas.size()) {
            double partial = 0;
            for (std::size_t j = 0; j < i; ++j)
                partial += alphas[j] * static_cast<double>(u[j]);
            std::int64_t lo =
                std::max<std::int64_t>(0, static_cast<std::int64_t>(
                                              std::floor((A - partial) / alphas[i])) -
                                              2);
            auto top = static_cast<std::int64_t>(std::floor((hi - partial) / alphas[i])) + 2;
            for (std::int64_t cand = lo; cand <= top; ++cand) {
                u[i] = cand;
                double s = weighted_sum(alphas, u);
                if (s >= A && s <= hi) ++count;
            }
            u[i] = 0;
            return;
        }
        for (std::int64_t cand = 0;; ++cand) {
            u[i] = cand;
            double partial = 0;
            for (std::size_t j = 0; j <= i; ++j)
                partial += alphas[j] * static_cast<double>(u[j]);
            if (partial > hi) break;
            self(self, i + 1);
        }
        u[i] = 0;
    };
    rec(rec, 0);
    return count;
}

/**
 * Exact count of primitive tuples with sup-norm <= B, F != 0, whose
 * S-free cofactor satisfies |F(x)| / [F(x)]_S <= M.
 */
inline std::uint64_t count_small_svalue_points(const MultiPoly& F, const PrimeSet& S,
                                               const Int& M, const Int& B,
                                               double enumeration_budget = 5e8) {
    SPARTS_CHECK(F.vars() >= 1, "at least one variable required");
    SPARTS_CHECK(M >= 0, "cofactor bound must be non-negative");
    SPARTS_CHECK(B >= 0, "box bound must be non-negative");
    if (B == 0 || M == 0) return 0;
    double cost = std::pow(2.0 * to_double(B) + 1.0, F.vars());
    if (cost > enumeration_budget)
        throw budget_error("tuple enumeration exceeds the budget");

    std::uint64_t count = 0;
    std::vector<Int> x(F.vars(), -B);
    while (true) {
        Int g = 0;
        for (const Int& xi : x) g = gcd_int(g, xi);
        if (g == 1) {
            Int val = F.evaluate(x);
            if (val != 0 && abs_int(s_split(val, S).cofactor) <= M) ++count;
        }
        std::size_t i = 0;
        while (i < x.size() && x[i] == B) x[i++] = -B;
        if (i == x.size()) break;
        ++x[i];
    }
    return count;
}

/// Grid report: exact counts against the expected growth model, with the
/// degenerate branch (no qualifying primes) asserting eventual constancy.
struct CountReport {
    std::vector<Int> grid;
    std::vector<std::uint64_t> counts;
    std::vector<double> model_values;
    std::vector<double> ratios;  // counts / model, empty in finiteness mode
    unsigned s_prime = 0;
    bool finiteness_mode = false;  // no qualifying prime: counts must flatline
    bool tail_constant = false;    // counts constant over the upper half
    double tail_ratio_min = 0.0;
    double tail_ratio_max = 0.0;
};

namespace detail {

inline CountReport assemble_report(std::vector<Int> grid, std::vector<std::uint64_t> counts,
                                   unsigned sprime, double growth_exponent) {
    CountReport rep;
    rep.grid = std::move(grid);
    rep.counts = std::move(counts);
    rep.s_prime = sprime;
    rep.finiteness_mode = (sprime == 0);
    for (std::size_t i = 0; i + 1 < rep.counts.size(); ++i)
        SPARTS_INVARIANT(rep.counts[i] <= rep.counts[i + 1],
                         "counts must be non-decreasing in B");
    const std::size_t tail_start = rep.grid.size() / 2;
    if (rep.finiteness_mode) {
        rep.model_values.assign(rep.grid.size(), 1.0);
        rep.tail_constant = true;
        for (std::size_t i = tail_start; i < rep.counts.size(); ++i)
            if (rep.counts[i] != rep.counts[tail_start]) rep.tail_constant = false;
        return rep;
    }
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
        double Bd = to_double(rep.grid[i]);
        double model = std::pow(Bd, growth_exponent) *
                       std::pow(std::log(Bd), static_cast<double>(sprime) - 1.0);
        rep.model_values.push_back(model);
        rep.ratios.push_back(static_cast<double>(rep.counts[i]) / model);
    }
    rep.tail_ratio_min = rep.ratios[tail_start];
    rep.tail_ratio_max = rep.ratios[tail_start];
    for (std::size_t i = tail_start; i < rep.ratios.size(); ++i) {
        rep.tail_ratio_min = std::min(rep.tail_ratio_min, rep.ratios[i]);
        rep.tail_ratio_max = std::max(rep.tail_ratio_max, rep.ratios[i]);
    }
    return rep;
}

inline void check_report_grid(const std::vector<Int>& grid) {
    SPARTS_CHECK(!grid.empty(), "empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        SPARTS_CHECK(grid[i] >= 2, "grid values must be at least 2");
        SPARTS_CHECK(i == 0 || grid[i - 1] < grid[i], "grid must be strictly increasing");
    }
}

} // namespace detail

inline CountReport asymptotic_report(const IntPoly& f, const PrimeSet& S, const Rat& eps,
                                     const std::vector<Int>& grid) {
    detail::check_report_grid(grid);
    int n = f.degree();
    SPARTS_CHECK(n >= 1, "non-constant polynomial required");
    auto subset = s_prime_subset(f, S);
    auto sprime = static_cast<unsigned>(subset.s_prime.size());
    if (sprime > 0)
        SPARTS_CHECK(eps * n < 1, "growth-law comparison needs epsilon < 1/degree");
    std::vector<std::uint64_t> counts;
    counts.reserve(grid.size());
    for (const Int& B : grid) counts.push_back(count_N_poly(f, S, eps, B));
    return detail::assemble_report(grid, std::move(counts), sprime,
                                   1.0 - n * to_double(eps));
}

inline CountReport asymptotic_report(const BinaryForm& F, const PrimeSet& S,
                                     const Rat& eps, const std::vector<Int>& grid) {
    detail::check_report_grid(grid);
    int n = F.degree();
    SPARTS_CHECK(n >= 1, "non-constant form required");
    auto subset = s_prime_subset(F, S);
    auto sprime = static_cast<unsigned>(subset.s_prime.size());
    if (sprime > 0)
        SPARTS_CHECK(eps * n < 1, "growth-law comparison needs epsilon < 1/degree");
    std::vector<std::uint64_t> counts;
    counts.reserve(grid.size());
    for (const Int& B : grid) counts.push_back(count_N_binary(F, S, eps, B));
    return detail::assemble_report(grid, std::move(counts), sprime,
                                   2.0 - n * to_double(eps));
}

/// Geometric grid ending at bmax: {bmax/factor^(k-1), ..., bmax/factor, bmax}.
inline std::vector<Int> make_geometric_grid(const Int& bmax, unsigned points,
                                            const Int& factor = Int(2)) {
    SPARTS_CHECK(points >= 1, "grid needs at least one point");
    SPARTS_CHECK(factor >= 2, "grid factor must be at least 2");
    std::vector<Int> grid(points);
    Int b = bmax;
    for (unsigned i = points; i-- > 0;) {
        grid[i] = b;
        b /= factor;
    }
    detail::check_report_grid(grid);
    return grid;
}

} // namespace sparts

#pragma once

/**
 * @file arith.hpp
 * @brief S-part decomposition, p-adic valuations, prime-factor profiles, and
 *        iterated logarithms.
 *
 * The S-part of a non-zero integer m relative to a prime set S = {p_1..p_s}
 * is the largest divisor of m composed only of primes in S: writing
 * m = p_1^{a_1} ... p_s^{a_s} b with b coprime to every p_i, the S-part is
 * the product of prime powers and b is the cofactor (carrying the sign).
 */

#include "sparts/integer.hpp"
#include "sparts/primes.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace sparts {

/// Largest e with p^e | n, plus the exact cofactor n / p^e.
struct Valuation {
    unsigned exponent = 0;
    Int cofactor;
};

inline Valuation split_valuation(const Int& n, const Int& p) {
    SPARTS_CHECK(!n.is_zero(), "valuation of zero is undefined");
    SPARTS_CHECK(p >= 2, "valuation base must be >= 2");
    Valuation v;
    v.cofactor = n;
    Int q, r;
    for (;;) {
        boost::multiprecision::divide_qr(v.cofactor, p, q, r);
        if (!r.is_zero()) break;
        v.cofactor = q;
        ++v.exponent;
    }
    return v;
}

/// Largest e with p^e | n; p must be prime, n non-zero.
inline unsigned padic_valuation(const Int& n, const Int& p) {
    SPARTS_CHECK(is_prime_checked(p), "padic_valuation needs a prime");
    return split_valuation(n, p).exponent;
}

/**
 * The decomposition m = p_1^{a_1} ... p_s^{a_s} b. s_part is positive;
 * cofactor b is coprime to every member of S and carries the sign of m.
 */
struct SPartSplit {
    std::vector<unsigned> exponents;  // aligned with the PrimeSet
    Int s_part;
    Int cofactor;
};

/// Trial-divides m by the S primes only; never factors the cofactor.
inline SPartSplit s_split(const Int& m, const PrimeSet& S) {
    SPARTS_CHECK(!m.is_zero(), "s_split of zero is undefined");
    SPartSplit out;
    out.exponents.reserve(S.size());
    out.s_part = 1;
    out.cofactor = m;
    for (std::size_t i = 0; i < S.size(); ++i) {
        Valuation v = split_valuation(out.cofactor, Int(S[i]));
        out.exponents.push_back(v.exponent);
        out.cofactor = v.cofactor;
        if (v.exponent > 0) out.s_part *= pow_int(Int(S[i]), v.exponent);
    }
    return out;
}

/// Just the S-part [m]_S, for callers that do not need the split.
inline Int s_part(const Int& m, const PrimeSet& S) { return s_split(m, S).s_part; }

/**
 * Greatest prime factor P(a), distinct prime count omega(a), and radical
 * Q(a) (greatest squarefree divisor), with P(1) = Q(1) = 1, omega(1) = 0.
 */
struct ArithProfile {
    Int greatest_prime_factor;
    unsigned distinct_prime_count = 0;
    Int radical;
};

/**
 * Full factorization profile of a positive integer. Trial division by primes
 * up to trial_bound first; whatever remains must fit in 64 bits for the
 * general-purpose finish, otherwise the budget error asks the caller to widen.
 */
inline ArithProfile arith_profile(const Int& a, std::int64_t trial_bound = 100000) {
    SPARTS_CHECK(a >= 1, "arith_profile needs a positive integer");
    ArithProfile out;
    out.greatest_prime_factor = 1;
    out.radical = 1;
    if (a == 1) return out;
    Int rest = a;
    for (std::int64_t p : primes_upto(trial_bound)) {
        if (rest == 1) break;
        Valuation v = split_valuation(rest, Int(p));
        if (v.exponent > 0) {
            rest = v.cofactor;
            out.radical *= p;
            out.greatest_prime_factor = p;
            ++out.distinct_prime_count;
        }
        if (Int(p) * p > rest) break;
    }
    if (rest > 1) {
        if (!fits_int64(rest))
            throw budget_error("arith_profile: unfactored part exceeds 64 bits; "
                               "raise the trial-division bound");
        auto factors = factor_u64(static_cast<std::uint64_t>(to_int64(rest)));
        for (const auto& [p, e] : factors) {
            (void)e;
            Int pi(p);
            out.radical *= pi;
            if (pi > out.greatest_prime_factor) out.greatest_prime_factor = pi;
            ++out.distinct_prime_count;
        }
    }
    return out;
}

/// i-fold iterated natural logarithm; the result must stay positive at every
/// stage except possibly the last.
inline double iter_log(double x, unsigned i) {
    SPARTS_CHECK(i >= 1, "iter_log needs i >= 1");
    double v = x;
    for (unsigned j = 0; j < i; ++j) {
        SPARTS_CHECK(v > 0.0, "iter_log domain violation");
        v = std::log(v);
    }
    SPARTS_CHECK(v > 0.0, "iter_log result is not positive");
    return v;
}

} // namespace sparts

#pragma once

/**
 * @file primes.hpp
 * @brief Deterministic 64-bit primality, prime generation, small factoring,
 *        and the validated prime-set type used throughout the library.
 */

#include "sparts/integer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace sparts {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1u) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1u;
    }
    return r;
}

} // namespace detail

/// Deterministic Miller-Rabin, valid for every n < 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// Primality for Int inputs; values >= 2^63 are rejected rather than guessed.
inline bool is_prime_checked(const Int& p) {
    SPARTS_CHECK(p >= 2, "prime must be >= 2");
    SPARTS_CHECK(fits_int64(p), "primes above 2^63 are not supported");
    return is_prime_u64(static_cast<std::uint64_t>(to_int64(p)));
}

/// All primes <= limit, by Eratosthenes.
inline std::vector<std::int64_t> primes_upto(std::int64_t limit) {
    std::vector<std::int64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

/// The n smallest primes.
inline std::vector<std::int64_t> first_n_primes(std::size_t n) {
    std::vector<std::int64_t> out;
    std::int64_t c = 2;
    while (out.size() < n) {
        if (is_prime_u64(static_cast<std::uint64_t>(c))) out.push_back(c);
        ++c;
    }
    return out;
}

/// Smallest prime strictly greater than n (n + 1 may overflow is not handled;
/// callers stay far below 2^63).
inline std::int64_t next_prime_above(std::int64_t n) {
    std::int64_t c = n < 1 ? 2 : n + 1;
    while (!is_prime_u64(static_cast<std::uint64_t>(c))) ++c;
    return c;
}

namespace detail {

inline std::uint64_t pollard_rho(std::uint64_t n) {
    // Brent's cycle variant; n must be odd, composite, and not a prime power
    // caught earlier. Deterministic: the increment walks 1, 2, 3, ...
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1;
        auto step = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) {
                d = 0;
                break;
            }
            d = std::gcd(diff, n);
        }
        if (d != 0 && d != n) return d;
    }
}

} // namespace detail

/**
 * Complete factorization of a positive 64-bit integer as prime -> exponent.
 * Trial division by small primes, then Pollard rho on what is left.
 */
inline std::map<std::uint64_t, unsigned> factor_u64(std::uint64_t n) {
    SPARTS_CHECK(n >= 1, "factor_u64 needs a positive integer");
    std::map<std::uint64_t, unsigned> out;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    std::vector<std::uint64_t> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        std::uint64_t m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime_u64(m)) {
            ++out[m];
            continue;
        }
        std::uint64_t d = detail::pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    return out;
}

/**
 * A sorted set of distinct validated primes. The quantity P appearing in the
 * exponent formulas is the largest element, with P = 1 for the empty set.
 */
class PrimeSet {
public:
    PrimeSet() = default;

    explicit PrimeSet(std::vector<std::int64_t> primes) : primes_(std::move(primes)) {
        std::sort(primes_.begin(), primes_.end());
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            SPARTS_CHECK(primes_[i] >= 2, "prime set contains a value < 2");
            SPARTS_CHECK(i == 0 || primes_[i] != primes_[i - 1],
                         "prime set contains a duplicate");
            SPARTS_CHECK(is_prime_u64(static_cast<std::uint64_t>(primes_[i])),
                         "prime set contains a composite");
        }
    }

    const std::vector<std::int64_t>& primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }
    bool empty() const { return primes_.empty(); }
    std::int64_t operator[](std::size_t i) const { return primes_[i]; }

    bool contains(std::int64_t p) const {
        return std::binary_search(primes_.begin(), primes_.end(), p);
    }

    /// max p_i, or 1 when empty.
    std::int64_t max_prime() const { return primes_.empty() ? 1 : primes_.back(); }

    /// Product of all members (1 when empty).
    Int product() const {
        Int r = 1;
        for (auto p : primes_) r *= p;
        return r;
    }

private:
    std::vector<std::int64_t> primes_;
};

} // namespace sparts

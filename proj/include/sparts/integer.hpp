#pragma once

/**
 * @file integer.hpp
 * @brief Exact integer/rational scalar types and low-level numeric helpers.
 *
 * Every counting, certification, and decision path in the library runs on
 * cpp_int / cpp_rational so nothing ever rounds. Hot loops may use the
 * saturating __int128 helpers below, which detect overflow and defer to
 * cpp_int instead of losing bits.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace sparts {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Thrown when an input violates a documented precondition.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a configurable work budget runs out; callers may widen and retry.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal invariant breaks are bugs, not input errors; fail loudly.
[[noreturn]] inline void invariant_failure(const char* what) {
    std::fprintf(stderr, "internal invariant violated: %s\n", what);
    std::abort();
}

#define SPARTS_CHECK(cond, msg)                               \
    do {                                                      \
        if (!(cond)) throw ::sparts::validation_error(msg);   \
    } while (0)

#define SPARTS_INVARIANT(cond, msg)                           \
    do {                                                      \
        if (!(cond)) ::sparts::invariant_failure(msg);        \
    } while (0)

inline int sign_of(const Int& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return boost::multiprecision::abs(x); }

/// x^e with e >= 0, exact.
inline Int pow_int(const Int& x, unsigned long e) {
    return boost::multiprecision::pow(x, e);
}

inline Int gcd_int(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

inline bool fits_int64(const Int& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Int& x) {
    SPARTS_INVARIANT(fits_int64(x), "value does not fit in 64 bits");
    return x.convert_to<std::int64_t>();
}

inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }

inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Natural log of |x| for non-zero x, stable even when |x| overflows double.
inline double log_abs(const Int& x) {
    SPARTS_CHECK(!x.is_zero(), "log of zero");
    Int a = abs_int(x);
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(a));
    if (bits <= 960) return std::log(to_double(a));
    Int top = a >> (bits - 64);
    return std::log(to_double(top)) + static_cast<double>(bits - 64) * std::log(2.0);
}

/// Parses a decimal integer (optional sign, leading zeros tolerated);
/// rejects anything else. Never routes through the octal-prefix parser.
inline Int parse_int(const std::string& s) {
    if (s.empty()) throw validation_error("empty integer literal");
    bool negative = s[0] == '-';
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw validation_error("bare sign is not an integer: " + s);
    Int v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw validation_error("malformed integer literal: " + s);
        v = v * 10 + (s[i] - '0');
    }
    return negative ? -v : v;
}

/// Parses "p" or "p/q" with q > 0 after normalization; rejects q = 0.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    SPARTS_CHECK(!den.is_zero(), "zero denominator: " + s);
    return Rat(num, den);
}

inline std::string to_string(const Int& x) { return x.str(); }

/// Renders "p" for integers and "p/q" otherwise.
inline std::string to_string(const Rat& r) {
    Int den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

namespace detail {

constexpr unsigned __int128 kSaturated = ~static_cast<unsigned __int128>(0);

/// a*b with saturation at 2^128-1; exact below that.
inline unsigned __int128 mul_sat(unsigned __int128 a, unsigned __int128 b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

/// a^e with saturation; the saturated marker only means "at least 2^127".
inline unsigned __int128 pow_sat(unsigned __int128 a, unsigned e) {
    unsigned __int128 acc = 1;
    while (e > 0) {
        if (e & 1u) acc = mul_sat(acc, a);
        e >>= 1u;
        if (e) a = mul_sat(a, a);
        if (acc == kSaturated) return kSaturated;
    }
    return acc;
}

} // namespace detail

/**
 * Exact three-way comparison of a^ea against b^eb for a, b >= 0.
 * Runs in __int128 when neither power can overflow; otherwise falls back to
 * cpp_int. Returns -1, 0, or +1.
 */
inline int compare_pow(const Int& a, unsigned ea, const Int& b, unsigned eb) {
    SPARTS_CHECK(a >= 0 && b >= 0, "compare_pow needs non-negative bases");
    if (fits_int64(a) && fits_int64(b)) {
        auto ua = static_cast<unsigned __int128>(to_int64(a));
        auto ub = static_cast<unsigned __int128>(to_int64(b));
        unsigned __int128 pa = detail::pow_sat(ua, ea);
        unsigned __int128 pb = detail::pow_sat(ub, eb);
        bool sat_a = (pa == detail::kSaturated);
        bool sat_b = (pb == detail::kSaturated);
        if (!sat_a && !sat_b) return pa < pb ? -1 : (pa > pb ? 1 : 0);
        if (sat_a != sat_b) return sat_a ? 1 : -1;
        // Both saturated: resolve exactly below.
    }
    Int pa = pow_int(a, ea);
    Int pb = pow_int(b, eb);
    return pa < pb ? -1 : (pa > pb ? 1 : 0);
}

} // namespace sparts

#pragma once

/**
 * @file ratpoly.hpp
 * @brief Dense univariate polynomials over exact rationals: evaluation,
 *        Sturm chains, and real-root isolation by bisection. Used for the
 *        section geometry of plane regions; all decisions are exact.
 */

#include "sparts/integer.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace sparts {

/// Coefficients ascending; empty vector is the zero polynomial.
using RatPoly = std::vector<Rat>;

namespace ratpoly {

inline void normalize(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rat eval(const RatPoly& p, const Rat& x) {
    Rat r = 0;
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

inline RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(i));
    return d;
}

/// Euclidean remainder of a by b; b must be non-zero.
inline RatPoly remainder(RatPoly a, const RatPoly& b) {
    SPARTS_INVARIANT(!b.empty(), "polynomial remainder by zero");
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
        a.pop_back();
        normalize(a);
        if (a.empty()) break;
    }
    return a;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        RatPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (Rat& c : a) c /= lead;
    }
    return a;
}

/// Exact quotient when the division is known to be exact (divisor | dividend).
inline RatPoly exact_divide(RatPoly a, const RatPoly& b) {
    SPARTS_INVARIANT(!b.empty(), "polynomial division by zero");
    RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size()) {
        Rat c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        normalize(a);
        if (a.empty()) break;
    }
    SPARTS_INVARIANT(a.empty(), "division declared exact left a remainder");
    return q;
}

/// Square-free part p / gcd(p, p').
inline RatPoly squarefree_part(RatPoly p) {
    normalize(p);
    if (degree(p) <= 1) return p;
    RatPoly g = gcd(p, derivative(p));
    if (degree(g) <= 0) return p;
    return exact_divide(p, g);
}

/// Sturm chain of a square-free polynomial.
inline std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    RatPoly a = p;
    normalize(a);
    if (a.empty()) return chain;
    chain.push_back(a);
    RatPoly b = derivative(a);
    normalize(b);
    while (!b.empty()) {
        chain.push_back(b);
        RatPoly r = remainder(chain[chain.size() - 2], b);
        for (Rat& c : r) c = -c;
        b = std::move(r);
    }
    return chain;
}

inline int sign_of_rat(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int variations = 0;
    int last = 0;
    for (const RatPoly& p : chain) {
        int s = sign_of_rat(eval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

/// Number of distinct real roots of the chain's polynomial in (a, b].
inline int count_roots(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

/**
 * Disjoint isolating intervals (lo, hi] for every distinct real root of p in
 * (a, b], each containing exactly one root and no wider than max_width.
 * p need not be square-free; isolation runs on its square-free part.
 */
inline std::vector<std::pair<Rat, Rat>> isolate_roots(const RatPoly& p, const Rat& a,
                                                      const Rat& b,
                                                      const Rat& max_width) {
    std::vector<std::pair<Rat, Rat>> out;
    RatPoly sf = squarefree_part(p);
    if (degree(sf) <= 0) return out;
    auto chain = sturm_chain(sf);
    // Phase 1: Sturm bisection until each interval holds exactly one root.
    std::vector<std::pair<Rat, Rat>> work{{a, b}}, isolated;
    while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int roots = count_roots(chain, lo, hi);
        if (roots == 0) continue;
        if (roots == 1) {
            isolated.push_back({lo, hi});
            continue;
        }
        Rat mid = (lo + hi) / 2;
        work.push_back({lo, mid});
        work.push_back({mid, hi});
    }
    // Phase 2: the bracketed root is simple, so plain sign bisection narrows
    // it without touching the chain again.
    for (auto& [lo, hi] : isolated) {
        while (hi - lo > max_width) {
            Rat mid = (lo + hi) / 2;
            int sm = sign_of_rat(eval(sf, mid));
            if (sm == 0) {
                lo = mid;
                hi = mid;
                break;
            }
            int shi = sign_of_rat(eval(sf, hi));
            if (shi == 0 || sm != shi)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back({lo, hi});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    return out;
}

} // namespace ratpoly
} // namespace sparts

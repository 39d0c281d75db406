#pragma once
/**
 * Extremal sequences: explicit integers and primitive pairs whose polynomial
 * or form values have exceptionally large S-parts relative to their size.
 *
 * Three constructions are provided, each returning a deterministic tower of
 * certified entries:
 *  - hensel_tower_poly: integers x_k == root (mod p^k) in [p^k, 2 p^k), so
 *    [f(x_k)]_p >= p^k > x_k / 2;
 *  - minkowski_tower_binary: shortest vectors of the lattices
 *    {(x, y): x == beta_k y (mod p^k)} attached to an irrational p-adic root
 *    beta of F(X, 1), giving [F(x, y)]_p >= (sqrt(3)/2) max(|x|, |y|)^2;
 *  - split_pair_tower_binary: for a form with two rational root directions
 *    and two primes p, q, points solving x - b1 y = u p^k, x - b2 y = u q^l,
 *    giving S-part exactly p^k q^l with max(|x|, |y|) << (p^k q^l)^{1/2}.
 *
 * Every inequality that an entry promises is re-checked in exact integer
 * arithmetic before the entry is emitted; a violation aborts via invariant
 * failure rather than producing an uncertified entry.
 */

#include "sparts/arith.hpp"
#include "sparts/congruence.hpp"
#include "sparts/integer.hpp"
#include "sparts/lattice.hpp"
#include "sparts/poly.hpp"
#include "sparts/primes.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace sparts {

/// Root structure a prime is asked to have for the tower constructions.
enum class PrimeSearchMode {
    has_root,           ///< f has at least one simple root mod p
    splits_completely,  ///< f has deg(f) distinct roots mod p
};

/**
 * One step of an extremal tower. Polynomial towers fill x only (is_pair
 * false, y = 0, l = 0); pair towers fill the primitive pair (x, y), and the
 * two-prime construction also fills l.
 */
struct TowerEntry {
    unsigned k = 0;          ///< exponent of the first prime
    unsigned l = 0;          ///< exponent of the second prime (two-prime towers)
    Int x;
    Int y;
    bool is_pair = false;
    Int value;               ///< f(x) or F(x, y); never zero
    Int s_part;              ///< S-part of value for the tower's prime set
    double ratio_log = 0.0;  ///< log(s_part) / log |value|
};

namespace detail {

inline double tower_ratio_log(const Int& s_part_value, const Int& value) {
    double lv = log_abs(value);
    return lv > 0.0 ? log_abs(s_part_value) / lv : 0.0;
}

/// Leading coefficient of F(X, 1); the form may have a vanishing X^n column.
inline Int dehomogenized_leading(const BinaryForm& F) {
    IntPoly f = F.dehomogenize_x();
    SPARTS_CHECK(!f.is_zero() && f.degree() >= 1,
                 "form must have a root direction besides (1, 0)");
    return f.coeffs().back();
}

/// Residues mod p of the rational roots of f, for p coprime to lc(f).
/// Requires p not dividing any root denominator (they all divide lc(f)).
inline std::set<Int> rational_root_residues(const IntPoly& f, const Int& p) {
    std::set<Int> out;
    for (const Rat& r : rational_roots(f)) {
        Int den = denominator(r);
        SPARTS_INVARIANT(den % p != 0,
                         "root denominators divide the unit leading coefficient");
        Int inv = inv_mod(mod_nonneg(den, p), p);
        out.insert(mod_nonneg(numerator(r) * inv, p));
    }
    return out;
}

/// The unique residue mod p^k lying over the simple root `branch` mod p.
inline Int lift_branch(const IntPoly& f, const Int& p, unsigned k, const Int& branch,
                       std::int64_t work_budget) {
    RootCount rc = roots_mod_prime_power(f, p, k, work_budget);
    Int found = -1;
    for (const Int& r : rc.residues) {
        if (mod_nonneg(r, p) == branch) {
            SPARTS_INVARIANT(found < 0, "a simple root lifts along a single branch");
            found = r;
        }
    }
    SPARTS_INVARIANT(found >= 0, "a simple root lifts to every level");
    return found;
}

}  // namespace detail

/**
 * Primes p <= search_bound, in increasing order, that are coprime to
 * lc(f) * disc(f) and give f the requested root structure mod p. Stops after
 * `count` primes; returns the partial set when the bound runs out first.
 */
inline PrimeSet find_good_primes(const IntPoly& f, PrimeSearchMode mode,
                                 std::size_t count, std::int64_t search_bound) {
    SPARTS_CHECK(f.degree() >= 1, "prime search needs a nonconstant polynomial");
    SPARTS_CHECK(search_bound >= 2, "search bound must be at least 2");
    const Int lead = f.coeffs().back();
    const Int disc = f.degree() >= 2 ? poly_discriminant(f) : Int(1);
    SPARTS_CHECK(disc != 0, "polynomials with repeated roots rejected");
    const std::size_t need =
        mode == PrimeSearchMode::splits_completely ? static_cast<std::size_t>(f.degree()) : 1;
    std::vector<std::int64_t> found;
    for (std::int64_t p : primes_upto(search_bound)) {
        if (found.size() >= count) break;
        if (lead % p == 0 || disc % p == 0) continue;
        // p coprime to disc makes every root mod p simple.
        if (count_roots_mod(f, Int(p), 1) >= need) found.push_back(p);
    }
    return PrimeSet(std::move(found));
}

/**
 * Binary-form variant: works on F(X, 1) and additionally skips primes
 * dividing F(1, 0), so that the point (1, 0) never absorbs the prime.
 */
inline PrimeSet find_good_primes(const BinaryForm& F, PrimeSearchMode mode,
                                 std::size_t count, std::int64_t search_bound) {
    SPARTS_CHECK(F.degree() >= 1, "prime search needs a nonconstant form");
    SPARTS_CHECK(search_bound >= 2, "search bound must be at least 2");
    const Int at_infinity = F.evaluate(1, 0);
    const IntPoly f = F.dehomogenize_x();
    SPARTS_CHECK(!f.is_zero() && f.degree() >= 1,
                 "form must have a root direction besides (1, 0)");
    const Int lead = f.coeffs().back();
    const Int disc = binary_discriminant(F);
    SPARTS_CHECK(disc != 0, "forms with repeated root directions rejected");
    const std::size_t need =
        mode == PrimeSearchMode::splits_completely ? static_cast<std::size_t>(f.degree()) : 1;
    std::vector<std::int64_t> found;
    for (std::int64_t p : primes_upto(search_bound)) {
        if (found.size() >= count) break;
        if (lead % p == 0 || disc % p == 0) continue;
        if (at_infinity != 0 && at_infinity % p == 0) continue;
        if (count_roots_mod(f, Int(p), 1) >= need) found.push_back(p);
    }
    return PrimeSet(std::move(found));
}

/**
 * Integer tower for a squarefree nonconstant polynomial f and a prime p
 * coprime to lc(f) * disc(f) with a root mod p. Entry k is the unique
 * x_k == root (mod p^k) in [p^k, 2 p^k) over the smallest root residue,
 * certified to satisfy p^k | f(x_k) and 2 [f(x_k)]_p >= x_k exactly.
 */
inline std::vector<TowerEntry> hensel_tower_poly(const IntPoly& f, const Int& p, unsigned K,
                                                 std::int64_t work_budget = 4000000) {
    SPARTS_CHECK(is_prime_checked(p), "tower modulus must be a prime");
    SPARTS_CHECK(f.degree() >= 1, "tower polynomial must be nonconstant");
    const Int lead = f.coeffs().back();
    const Int disc = f.degree() >= 2 ? poly_discriminant(f) : Int(1);
    SPARTS_CHECK(disc != 0, "polynomials with repeated roots rejected");
    SPARTS_CHECK(lead % p != 0 && disc % p != 0,
                 "prime must be coprime to the leading coefficient and discriminant");
    RootCount base = roots_mod_prime_power(f, p, 1, work_budget);
    SPARTS_CHECK(!base.residues.empty(), "prime admits no root of the polynomial");
    const Int branch = base.residues.front();  // sorted: smallest residue
    const PrimeSet Sp({to_int64(p)});

    std::vector<TowerEntry> tower;
    tower.reserve(K);
    Int pk = 1;
    for (unsigned k = 1; k <= K; ++k) {
        pk *= p;
        Int root = detail::lift_branch(f, p, k, branch, work_budget);
        Int x = root + pk;  // normalize into [p^k, 2 p^k)
        SPARTS_INVARIANT(pk <= x && x < 2 * pk, "tower point lies in [p^k, 2 p^k)");
        Int value = f.evaluate(x);
        SPARTS_CHECK(value != 0, "tower point coincides with an integer root of f");
        SPARTS_INVARIANT(value % pk == 0, "congruence forces p^k to divide the value");
        SPartSplit sp = s_split(value, Sp);
        SPARTS_INVARIANT(sp.s_part % pk == 0, "S-part carries the full prime power");
        SPARTS_INVARIANT(2 * sp.s_part >= x, "S-part exceeds half the point");
        TowerEntry e;
        e.k = k;
        e.x = x;
        e.value = value;
        e.s_part = sp.s_part;
        e.ratio_log = detail::tower_ratio_log(sp.s_part, value);
        tower.push_back(std::move(e));
    }
    return tower;
}

/**
 * Pair tower for a squarefree form F of degree >= 2 and a prime p coprime to
 * lc(F(X,1)) * disc(F), where F(X, 1) has a root mod p that is not the
 * reduction of a rational root. Entry k is the canonical shortest vector of
 * {(x, y): x == beta_k y (mod p^k)} for the Hensel lift beta_k of the
 * smallest such residue, stripped of its p-power content, certified by
 *   3 max(|x|,|y|)^4 p^{4u} <= 4 p^{2k}   (Lagrange-reduced shortest vector)
 *   p^{k-u} | F(x, y)                     (lattice membership)
 *   3 max(|x|,|y|)^4 <= 4 [F(x, y)]_p^2   (combined S-part lower bound),
 * u being the stripped exponent. All checks are exact.
 */
inline std::vector<TowerEntry> minkowski_tower_binary(const BinaryForm& F, const Int& p,
                                                      unsigned K,
                                                      std::int64_t work_budget = 4000000) {
    SPARTS_CHECK(is_prime_checked(p), "tower modulus must be a prime");
    SPARTS_CHECK(F.degree() >= 2, "pair towers need a form of degree >= 2");
    const Int disc = binary_discriminant(F);
    SPARTS_CHECK(disc != 0, "forms with repeated root directions rejected");
    const IntPoly f = F.dehomogenize_x();
    const Int lead = detail::dehomogenized_leading(F);
    SPARTS_CHECK(lead % p != 0 && disc % p != 0,
                 "prime must be coprime to the leading coefficient and discriminant");
    const std::size_t rational_count = rational_roots(f).size();
    const bool root_at_infinity = F.evaluate(1, 0) == 0;
    SPARTS_CHECK(rational_count + (root_at_infinity ? 1u : 0u) <
                     static_cast<std::size_t>(F.degree()),
                 "forms that split over the rationals use the two-prime tower");

    RootCount base = roots_mod_prime_power(f, p, 1, work_budget);
    std::set<Int> rational_residues = detail::rational_root_residues(f, p);
    SPARTS_INVARIANT(rational_residues.size() == rational_count,
                     "distinct rational roots stay distinct mod p");
    Int branch = -1;
    for (const Int& r : base.residues) {
        if (!rational_residues.count(r)) { branch = r; break; }
    }
    SPARTS_CHECK(branch >= 0, "prime sees no irrational root branch of the form");
    const PrimeSet Sp({to_int64(p)});

    std::vector<TowerEntry> tower;
    tower.reserve(K);
    Int pk = 1;
    for (unsigned k = 1; k <= K; ++k) {
        pk *= p;
        Int beta = detail::lift_branch(f, p, k, branch, work_budget);
        ClassLattice L = class_lattice(beta, 1, pk);
        ReducedBasis rb = gauss_reduce(L.basis);
        Vec2 v = rb.basis[0];
        SPARTS_INVARIANT(norm_sq(v) == rb.shortest_norm_sq, "first row is shortest");
        SPARTS_INVARIANT(3 * rb.shortest_norm_sq * rb.shortest_norm_sq <= 4 * pk * pk,
                         "shortest vector obeys the planar Hermite bound");
        SPARTS_INVARIANT(L.contains(v[0], v[1]), "shortest vector lies in the class");
        Int g = gcd_int(v[0], v[1]);
        Valuation gv = split_valuation(g, p);
        SPARTS_INVARIANT(gv.cofactor == 1,
                         "a shorter class vector would exist if a prime other than p "
                         "divided the shortest one");
        const unsigned u = gv.exponent;
        SPARTS_INVARIANT(2 * u <= k, "stripped exponent stays within the level");
        Int x = v[0] / g, y = v[1] / g;
        Int value = F.evaluate(x, y);
        SPARTS_INVARIANT(value != 0, "shortest vector avoids every root line");
        Int pk_res = pow_int(p, k - u);
        SPARTS_INVARIANT(value % pk_res == 0, "class membership forces p^{k-u} | F(x, y)");
        SPartSplit sp = s_split(value, Sp);
        Int mu = std::max(abs_int(x), abs_int(y));
        Int mu4 = mu * mu * mu * mu;
        SPARTS_INVARIANT(3 * mu4 * pow_int(p, 4 * u) <= 4 * pk * pk,
                         "stripped point inherits the Hermite bound");
        SPARTS_INVARIANT(3 * mu4 <= 4 * sp.s_part * sp.s_part,
                         "S-part dominates (sqrt(3)/2) max(|x|,|y|)^2");
        TowerEntry e;
        e.k = k;
        e.x = x;
        e.y = y;
        e.is_pair = true;
        e.value = value;
        e.s_part = sp.s_part;
        e.ratio_log = detail::tower_ratio_log(sp.s_part, value);
        tower.push_back(std::move(e));
    }
    return tower;
}

/**
 * One admissible ordered labeling (b1, b2) of two distinct rational roots of
 * F(X, 1), with the minimal positive u making u b1, u b2, u / (b2 - b1) all
 * integers. Admissible means p and q divide none of lc(F(X,1)), disc(F), u.
 */
struct SplitData {
    Int p;
    Int q;
    Rat beta1;
    Rat beta2;
    Int u;
};

/**
 * All admissible ordered root labelings for the two-prime construction, in
 * the deterministic search order: roots sorted increasingly, ordered pairs
 * enumerated lexicographically by index.
 */
inline std::vector<SplitData> admissible_split_labelings(const BinaryForm& F, const Int& p,
                                                         const Int& q) {
    SPARTS_CHECK(is_prime_checked(p) && is_prime_checked(q), "both moduli must be prime");
    SPARTS_CHECK(p != q, "the two primes must be distinct");
    SPARTS_CHECK(F.degree() >= 2, "pair towers need a form of degree >= 2");
    const Int disc = binary_discriminant(F);
    SPARTS_CHECK(disc != 0, "forms with repeated root directions rejected");
    const IntPoly f = F.dehomogenize_x();
    const Int lead = detail::dehomogenized_leading(F);
    SPARTS_CHECK(lead % p != 0 && disc % p != 0 && lead % q != 0 && disc % q != 0,
                 "primes must be coprime to the leading coefficient and discriminant");
    std::vector<Rat> roots = rational_roots(f);
    std::sort(roots.begin(), roots.end());
    SPARTS_CHECK(roots.size() >= 2,
                 "two-prime towers need two rational root directions");

    std::vector<SplitData> out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (i == j) continue;
            const Rat& b1 = roots[i];
            const Rat& b2 = roots[j];
            Rat delta = b2 - b1;
            Int u = lcm_int(lcm_int(denominator(b1), denominator(b2)),
                            abs_int(numerator(delta)));
            if (u % p == 0 || u % q == 0) continue;
            out.push_back(SplitData{p, q, b1, b2, u});
        }
    }
    return out;
}

/**
 * For k = 1..K, the pair (k, l) with the smallest l such that
 * p^k < q^l < q p^k; every two-prime tower entry uses one such pair, making
 * p^k and q^l agree within a factor q.
 */
inline std::vector<std::pair<unsigned, unsigned>> make_split_schedule(const Int& p, const Int& q,
                                                                      unsigned K) {
    SPARTS_CHECK(p >= 2 && q >= 2 && p != q, "schedule needs two distinct moduli >= 2");
    std::vector<std::pair<unsigned, unsigned>> out;
    out.reserve(K);
    Int pk = 1, ql = 1;
    unsigned l = 0;
    for (unsigned k = 1; k <= K; ++k) {
        pk *= p;
        while (ql <= pk) { ql *= q; ++l; }
        SPARTS_INVARIANT(pk < ql && ql < q * pk, "powers interleave within a factor q");
        out.emplace_back(k, l);
    }
    return out;
}

/**
 * Two-prime tower for a form whose dehomogenization has at least two rational
 * roots. For each requested exponent pair (k, l) with p^k < q^l < q p^k, the
 * first admissible labeling (b1, b2) yielding an integral solution of
 *     x - b1 y = u p^k,    x - b2 y = u q^l
 * is used; the solution is stripped to a primitive pair (the gcd is coprime
 * to p q) and certified to satisfy [F(x, y)]_{p,q} = p^k q^l exactly, with
 * max(|x|, |y|)^2 <= C^2 p^k q^l for the explicit constant
 * C^2 = q (|u/(b2-b1)| max(1, |b1|) + u)^2. An empty pair list yields an
 * empty tower.
 */
inline std::vector<TowerEntry> split_pair_tower_binary(
    const BinaryForm& F, const Int& p, const Int& q,
    const std::vector<std::pair<unsigned, unsigned>>& pairs) {
    std::vector<SplitData> labelings = admissible_split_labelings(F, p, q);
    SPARTS_CHECK(!labelings.empty(), "no admissible root labeling for these primes");
    const PrimeSet Spq({std::min(to_int64(p), to_int64(q)),
                        std::max(to_int64(p), to_int64(q))});

    std::vector<TowerEntry> tower;
    tower.reserve(pairs.size());
    for (const auto& [k, l] : pairs) {
        SPARTS_CHECK(k >= 1 && l >= 1, "exponents must be positive");
        Int pk = pow_int(p, k);
        Int ql = pow_int(q, l);
        SPARTS_CHECK(pk < ql && ql < q * pk,
                     "exponent pairs must satisfy p^k < q^l < q p^k");
        bool done = false;
        for (const SplitData& lab : labelings) {
            const Rat delta = Rat(lab.beta2) - Rat(lab.beta1);
            const Int power_gap = pk - ql;
            const Int u_pk = lab.u * pk;
            const Int u_ql = lab.u * ql;
            Rat y_rat = Rat(lab.u) * Rat(power_gap) / delta;
            if (denominator(y_rat) != 1) continue;
            Rat x_rat = Rat(lab.beta1) * y_rat + Rat(u_pk);
            if (denominator(x_rat) != 1) continue;
            Int x = numerator(x_rat);
            Int y = numerator(y_rat);
            // The defining equations, re-checked as exact rational identities.
            SPARTS_INVARIANT((Rat(x) - Rat(lab.beta1) * Rat(y) == Rat(u_pk)),
                             "first root equation holds");
            SPARTS_INVARIANT((Rat(x) - Rat(lab.beta2) * Rat(y) == Rat(u_ql)),
                             "second root equation holds");
            Int g = gcd_int(x, y);
            SPARTS_INVARIANT(g % p != 0 && g % q != 0,
                             "the common divisor is coprime to both primes");
            x /= g;
            y /= g;
            Int value = F.evaluate(x, y);
            SPARTS_INVARIANT(value != 0, "split points avoid every root line");
            SPartSplit sp = s_split(value, Spq);
            SPARTS_INVARIANT(sp.s_part == pk * ql,
                             "the S-part equals p^k q^l exactly");
            Int mu = std::max(abs_int(x), abs_int(y));
            Rat slope = Rat(lab.u) / delta;
            if (slope < 0) slope = -slope;
            Rat b1_abs = Rat(lab.beta1) < 0 ? Rat(-lab.beta1) : Rat(lab.beta1);
            if (b1_abs < 1) b1_abs = 1;
            Rat scale = slope * b1_abs + Rat(lab.u);
            Rat csq = Rat(q) * scale * scale;
            Int mu_sq = mu * mu;
            Int pkql = pk * ql;
            SPARTS_INVARIANT((Rat(mu_sq) <= csq * Rat(pkql)),
                             "point size stays within C (p^k q^l)^{1/2}");
            TowerEntry e;
            e.k = k;
            e.l = l;
            e.x = x;
            e.y = y;
            e.is_pair = true;
            e.value = value;
            e.s_part = sp.s_part;
            e.ratio_log = detail::tower_ratio_log(sp.s_part, value);
            tower.push_back(std::move(e));
            done = true;
            break;
        }
        SPARTS_CHECK(done, "no labeling yields an integral point for this exponent pair");
    }
    return tower;
}

}  // namespace sparts

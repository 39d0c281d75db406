#pragma once
/**
 * @file effective.hpp
 * @brief Explicit exponent evaluation and empirical growth reports.
 *
 * Three families of computations live here:
 *  - kappa: the exponent shape (c^s (P log p_1 ... log p_s)^d)^{-1} together
 *    with its simplified lower bound (c^s (2P (log P)^s)^d)^{-1}, plus a fit
 *    operation recovering the smallest companion constant over a sample;
 *  - cor2_check: greatest-prime-factor inequalities for a represented
 *    integer, with the two-branch comparator selected by the prime profile;
 *  - radical_growth_report: per-value radicals Q(f(x)) against iterated-log
 *    comparators, with running-minimum fits of the growth constants.
 *
 * This is the only module whose results are double precision.  The base
 * constants in the sources are merely "effectively computable", so every
 * operation takes them as configurable inputs, reports shapes and fitted
 * values, and never asserts the underlying inequalities for arbitrary data.
 * Comparisons that feed internal assertions carry a relative guard of 1e-9.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sparts/arith.hpp"
#include "sparts/integer.hpp"
#include "sparts/poly.hpp"
#include "sparts/primes.hpp"

namespace sparts {

/// Relative slack for double-precision comparisons that feed assertions.
inline constexpr double kEffectiveGuard = 1e-9;

/**
 * Inputs of the exponent formula: a prime set with s = |S| >= 1 and largest
 * member P, a positive degree d, and a base constant c > 1.
 */
struct KappaParams {
    PrimeSet primes;
    unsigned degree = 1;
    double base = 2.0;
};

/// Both evaluations of the exponent formula; product_form is the exponent.
struct KappaResult {
    double product_form = 0.0;     ///< (c^s (P log p_1 ... log p_s)^d)^{-1}
    double simplified_form = 0.0;  ///< (c^s (2 P (log P)^s)^d)^{-1}
    std::int64_t max_prime = 1;    ///< P
};

/**
 * Evaluates the exponent in both forms and certifies that the product form
 * dominates the simplified one.  The result lies strictly inside (0, 1):
 * with c > 1 and P log p_1 >= 2 log 2 > 1 both denominators exceed 1.
 */
inline KappaResult kappa(const KappaParams& params) {
    SPARTS_CHECK(!params.primes.empty(), "the exponent formula needs s >= 1 primes");
    SPARTS_CHECK(params.degree >= 1, "the exponent formula needs degree >= 1");
    SPARTS_CHECK(params.base > 1.0, "the exponent formula needs a base constant > 1");

    const std::size_t s = params.primes.size();
    const double P = static_cast<double>(params.primes.max_prime());
    const double logP = std::log(P);

    double log_product = 0.0;  // log of P log p_1 ... log p_s
    for (std::size_t i = 0; i < s; ++i)
        log_product += std::log(std::log(static_cast<double>(params.primes[i])));
    log_product += std::log(P);

    const double log_simplified = std::log(2.0 * P) + static_cast<double>(s) * std::log(logP);

    const double cs = static_cast<double>(s) * std::log(params.base);
    const double d = static_cast<double>(params.degree);

    KappaResult out;
    out.product_form = std::exp(-(cs + d * log_product));
    out.simplified_form = std::exp(-(cs + d * log_simplified));
    out.max_prime = params.primes.max_prime();

    SPARTS_INVARIANT(out.product_form > 0.0 && out.product_form < 1.0,
                     "exponent must lie strictly between 0 and 1");
    SPARTS_INVARIANT(out.simplified_form > 0.0 && out.simplified_form < 1.0,
                     "simplified exponent must lie strictly between 0 and 1");
    SPARTS_INVARIANT(out.product_form >= out.simplified_form * (1.0 - kEffectiveGuard),
                     "product form must dominate the simplified form");
    return out;
}

/// Smallest multiplicative constant fitted over a sample (0 when empty).
struct SPartFit {
    double constant = 0.0;
    bool empty_sample = false;
};

/**
 * Given pairs (|F(x)|, [F(x)]_S) from actual evaluations and an exponent
 * kappa in (0, 1), returns the smallest constant C with
 * [F(x)]_S <= C |F(x)|^{1 - kappa} over the whole sample, i.e. the maximum
 * of [F(x)]_S / |F(x)|^{1 - kappa}.  Computed in the log domain so that
 * arbitrarily large integer samples stay in range.
 */
inline SPartFit spart_bound_fit(const std::vector<std::pair<Int, Int>>& values,
                                double kappa_exponent) {
    SPARTS_CHECK(kappa_exponent > 0.0 && kappa_exponent < 1.0,
                 "the fitted bound needs an exponent strictly between 0 and 1");
    SPartFit out;
    if (values.empty()) {
        out.empty_sample = true;  // constant 0: an empty sample bounds nothing
        return out;
    }
    double best_log = 0.0;
    bool first = true;
    for (const auto& [abs_value, s_part_value] : values) {
        SPARTS_CHECK(abs_value >= 1, "sample magnitudes must be positive");
        SPARTS_CHECK(s_part_value >= 1, "sample S-parts must be positive");
        const double candidate =
            log_abs(s_part_value) - (1.0 - kappa_exponent) * log_abs(abs_value);
        if (first || candidate > best_log) best_log = candidate;
        first = false;
    }
    out.constant = std::exp(best_log);
    return out;
}

/// Which comparator the two-branch inequality selects.
enum class Cor2Branch {
    root_of_log,   ///< omega <= log P / log_2 P: compare P with (log |F0|)^{1/3d}
    iterated_logs  ///< otherwise: compare P with C5 log_2 |F0| log_3 |F0| / log_4 |F0|
};

/**
 * Margins of the greatest-prime-factor inequalities for one integer.  The
 * operation evaluates, it does not certify: negative margins are expected
 * for integers outside the represented-value regime.
 */
struct Cor2Result {
    Int greatest_prime = 1;          ///< P(F0)
    unsigned prime_count = 0;        ///< omega(F0)
    double power_lhs = 0.0;          ///< (P (log P)^{2 omega})^d
    double log_f0 = 0.0;             ///< log |F0|
    double power_margin = 0.0;       ///< power_lhs - log_f0
    Cor2Branch branch = Cor2Branch::root_of_log;
    std::optional<double> branch_value;   ///< comparator when its logs are defined
    std::optional<double> branch_margin;  ///< P - comparator
};

/**
 * Computes P(F0) and omega(F0), evaluates (P (log P)^{2 omega})^d against
 * log |F0|, selects the comparator branch by omega <= log P / log_2 P, and
 * reports P minus the branch comparator.  The iterated-logs comparator is
 * reported only when log_4 |F0| is positive; otherwise the margin is absent.
 */
inline Cor2Result cor2_check(const Int& f0, unsigned degree, double c5 = 1.0,
                             std::int64_t trial_bound = 100000) {
    SPARTS_CHECK(degree >= 1, "the inequality needs degree >= 1");
    SPARTS_CHECK(c5 > 0.0, "the comparator constant must be positive");
    Int a = abs(f0);
    SPARTS_CHECK(a >= 3, "iterated logarithms need |F0| >= 3");

    ArithProfile profile = arith_profile(a, trial_bound);
    Cor2Result out;
    out.greatest_prime = profile.greatest_prime_factor;
    out.prime_count = profile.distinct_prime_count;

    const double P = static_cast<double>(out.greatest_prime);
    const double d = static_cast<double>(degree);
    const double logP = std::log(P);
    out.power_lhs = std::pow(P * std::pow(logP, 2.0 * out.prime_count), d);
    out.log_f0 = log_abs(a);
    out.power_margin = out.power_lhs - out.log_f0;

    // log_2 P may be negative (P = 2); the branch test is still meaningful
    // because omega >= 1 can never sit below a negative ratio.
    const double log2P = std::log(logP);
    const bool first_branch =
        log2P != 0.0 && static_cast<double>(out.prime_count) <= logP / log2P;
    out.branch = first_branch ? Cor2Branch::root_of_log : Cor2Branch::iterated_logs;

    if (first_branch) {
        out.branch_value = std::pow(out.log_f0, 1.0 / (3.0 * d));
    } else {
        const double l2 = std::log(out.log_f0);
        if (l2 > 0.0) {
            const double l3 = std::log(l2);
            if (l3 > 0.0) {
                const double l4 = std::log(l3);
                if (l4 > 0.0) out.branch_value = c5 * l2 * l3 / l4;
            }
        }
    }
    if (out.branch_value) out.branch_margin = P - *out.branch_value;
    return out;
}

/// Why a radical-report row carries no computed quantities.
enum class RadicalRowStatus {
    ok,
    skipped_small_x,     ///< |x| <= 2: log_2 |x| is not positive
    skipped_zero_value,  ///< f(x) = 0: the radical is undefined
    skipped_budget       ///< factorization exceeded the trial budget
};

/// One sampled point of the radical growth report.
struct RadicalRow {
    Int x;
    Int value;                          ///< f(x)
    RadicalRowStatus status = RadicalRowStatus::ok;
    Int radical = 1;                    ///< Q(|f(x)|)
    unsigned prime_count = 0;           ///< omega(|f(x)|)
    double log_radical = 0.0;           ///< log Q
    double log2_x = 0.0;                ///< log_2 |x|
    double two_log_ratio = 0.0;         ///< log Q / log_2 |x|
    std::optional<double> three_log_comparator;  ///< log_2|x| log_3|x| / log_4|x|
    std::optional<double> three_log_ratio;       ///< log Q / comparator
    std::optional<double> chain_lhs;    ///< log_2 |x| / s
    std::optional<double> chain_rhs;    ///< 1 + log(log Q / s) + log_3 Q / s
};

/// All rows plus running-minimum fits of the two growth constants.
struct RadicalGrowthReport {
    std::vector<RadicalRow> rows;
    std::optional<double> two_log_fit;    ///< min over rows of log Q / log_2 |x|
    std::optional<double> three_log_fit;  ///< min over rows with the comparator
    unsigned skipped = 0;
};

/**
 * Tabulates Q(f(x)) for x in [from, to] against the two iterated-log
 * comparators.  Points with |x| <= 2, f(x) = 0, or a factorization that
 * exhausts the trial budget are kept as flagged rows and excluded from the
 * fits.  The three-log comparator needs log_4 |x| > 0, which only happens
 * for |x| above e^(e^e) (about 3.8 million); below that its column is empty.
 * When with_prime_chain is set, each row also carries both sides of the
 * intermediate inequality linking log_2 |x| / s to the radical of the value,
 * where s = omega(f(x)).
 */
inline RadicalGrowthReport radical_growth_report(const IntPoly& f, const Int& from,
                                                 const Int& to, bool with_prime_chain = false,
                                                 std::int64_t trial_bound = 100000) {
    SPARTS_CHECK(from <= to, "the sample range is empty");
    SPARTS_CHECK(f.degree() >= 1, "the report needs a nonconstant polynomial");

    RadicalGrowthReport report;
    for (Int x = from; x <= to; ++x) {
        RadicalRow row;
        row.x = x;
        row.value = f.evaluate(x);
        const Int ax = abs(x);
        if (ax <= 2) {
            row.status = RadicalRowStatus::skipped_small_x;
        } else if (row.value.is_zero()) {
            row.status = RadicalRowStatus::skipped_zero_value;
        } else {
            try {
                ArithProfile profile = arith_profile(abs(row.value), trial_bound);
                row.radical = profile.radical;
                row.prime_count = profile.distinct_prime_count;
            } catch (const budget_error&) {
                row.status = RadicalRowStatus::skipped_budget;
            }
        }
        if (row.status != RadicalRowStatus::ok) {
            ++report.skipped;
            report.rows.push_back(std::move(row));
            continue;
        }

        row.log_radical = log_abs(row.radical);
        row.log2_x = std::log(log_abs(ax));
        row.two_log_ratio = row.log_radical / row.log2_x;
        if (!report.two_log_fit || row.two_log_ratio < *report.two_log_fit)
            report.two_log_fit = row.two_log_ratio;

        const double l3 = std::log(row.log2_x);
        if (l3 > 0.0) {
            const double l4 = std::log(l3);
            if (l4 > 0.0) {
                row.three_log_comparator = row.log2_x * l3 / l4;
                row.three_log_ratio = row.log_radical / *row.three_log_comparator;
                if (!report.three_log_fit || *row.three_log_ratio < *report.three_log_fit)
                    report.three_log_fit = *row.three_log_ratio;
            }
        }

        if (with_prime_chain && row.prime_count >= 1 && row.radical >= 3) {
            const double s = static_cast<double>(row.prime_count);
            const double lq = row.log_radical;
            const double l2q = std::log(lq);
            if (l2q > 0.0) {
                const double l3q = std::log(l2q);
                row.chain_lhs = row.log2_x / s;
                row.chain_rhs = 1.0 + std::log(lq / s) + l3q / s;
            }
        }

        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace sparts

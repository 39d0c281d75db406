#include <catch2/catch_amalgamated.hpp>

#include "sparts/effective.hpp"
#include "sparts/extremal.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace sparts;

namespace {
KappaParams params(std::vector<std::int64_t> primes, unsigned d, double c) {
    return KappaParams{PrimeSet(std::move(primes)), d, c};
}
}  // namespace

TEST_CASE("the exponent formula evaluates both closed forms") {
    SECTION("one prime, degree one") {
        KappaResult k = kappa(params({2}, 1, 100.0));
        CHECK(std::abs(k.product_form - 0.0072134752044448166) < 1e-12);
        CHECK(k.max_prime == 2);
        CHECK(k.simplified_form <= k.product_form);
        CHECK(k.simplified_form > 0.0);
    }

    SECTION("two primes, degree two") {
        // P is the largest member of S, so the inner product is 3 log2 log3.
        KappaResult k = kappa(params({2, 3}, 2, 100.0));
        CHECK(std::abs(k.product_form - 1.9160977607208476e-05) < 1e-15);
        CHECK(k.simplified_form <= k.product_form);
    }

    SECTION("degenerate parameters are rejected") {
        CHECK_THROWS_AS(kappa(params({}, 1, 2.0)), validation_error);
        CHECK_THROWS_AS(kappa(params({2}, 0, 2.0)), validation_error);
        CHECK_THROWS_AS(kappa(params({2}, 1, 1.0)), validation_error);
        CHECK_THROWS_AS(kappa(params({2}, 1, 0.5)), validation_error);
    }
}

TEST_CASE("the exponent is strictly decreasing in every parameter") {
    const double guard = 1e-9;

    SECTION("in the base constant") {
        KappaResult a = kappa(params({2, 3}, 1, 2.0));
        KappaResult b = kappa(params({2, 3}, 1, 3.0));
        CHECK(a.product_form > b.product_form * (1.0 + guard));
    }

    SECTION("in the prime count, largest prime fixed") {
        KappaResult a = kappa(params({2, 7}, 1, 2.0));
        KappaResult b = kappa(params({2, 5, 7}, 1, 2.0));
        CHECK(a.max_prime == b.max_prime);
        CHECK(a.product_form > b.product_form * (1.0 + guard));
    }

    SECTION("in the largest prime, count fixed") {
        KappaResult a = kappa(params({2, 7}, 1, 2.0));
        KappaResult b = kappa(params({2, 11}, 1, 2.0));
        CHECK(a.product_form > b.product_form * (1.0 + guard));
    }

    SECTION("in the degree") {
        KappaResult a = kappa(params({2, 3}, 1, 2.0));
        KappaResult b = kappa(params({2, 3}, 2, 2.0));
        CHECK(a.product_form > b.product_form * (1.0 + guard));
    }

    SECTION("the product form dominates on random draws") {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> base(1.1, 50.0);
        std::uniform_int_distribution<int> mask(1, (1 << 15) - 1);
        std::uniform_int_distribution<unsigned> deg(1, 5);
        std::vector<std::int64_t> pool = first_n_primes(15);
        for (int trial = 0; trial < 200; ++trial) {
            int m = mask(rng);
            std::vector<std::int64_t> chosen;
            for (int i = 0; i < 15; ++i)
                if (m & (1 << i)) chosen.push_back(pool[static_cast<std::size_t>(i)]);
            KappaResult k = kappa(params(std::move(chosen), deg(rng), base(rng)));
            CHECK((k.product_form > 0.0 && k.product_form < 1.0));
            CHECK(k.product_form >= k.simplified_form * (1.0 - 1e-9));
        }
    }
}

TEST_CASE("the fitted bound constant is a sample maximum") {
    SECTION("a single point pins the constant") {
        SPartFit fit = spart_bound_fit({{Int(50), Int(50)}}, 0.5);
        CHECK(std::abs(fit.constant - 7.0710678118654755) < 1e-9);
        CHECK_FALSE(fit.empty_sample);
    }

    SECTION("an empty sample fits nothing and says so") {
        SPartFit fit = spart_bound_fit({}, 0.5);
        CHECK(fit.constant == 0.0);
        CHECK(fit.empty_sample);
    }

    SECTION("the constant never shrinks as the sample grows") {
        std::vector<std::pair<Int, Int>> sample = {{Int(100), Int(10)}};
        SPartFit small = spart_bound_fit(sample, 0.25);
        sample.push_back({Int(1000), Int(999)});
        SPartFit large = spart_bound_fit(sample, 0.25);
        CHECK(large.constant >= small.constant * (1.0 - 1e-12));
        sample.push_back({Int(7), Int(1)});
        SPartFit largest = spart_bound_fit(sample, 0.25);
        CHECK(largest.constant >= large.constant * (1.0 - 1e-12));
    }

    SECTION("invalid exponents and degenerate samples are rejected") {
        CHECK_THROWS_AS(spart_bound_fit({{Int(5), Int(5)}}, 0.0), validation_error);
        CHECK_THROWS_AS(spart_bound_fit({{Int(5), Int(5)}}, 1.0), validation_error);
        CHECK_THROWS_AS(spart_bound_fit({{Int(0), Int(5)}}, 0.5), validation_error);
        CHECK_THROWS_AS(spart_bound_fit({{Int(5), Int(0)}}, 0.5), validation_error);
    }

    SECTION("tower samples fit a finite constant near the target exponent") {
        IntPoly f({1, 0, 1});  // X^2 + 1
        std::vector<TowerEntry> tower = hensel_tower_poly(f, Int(5), 20);
        REQUIRE(tower.size() == 20);

        std::vector<std::pair<Int, Int>> sample;
        double tail_min = 1.0;
        for (const TowerEntry& e : tower) {
            sample.push_back({abs(e.value), e.s_part});
            if (e.k >= 10) tail_min = std::min(tail_min, e.ratio_log);
        }
        // The construction targets exponent 1/2; measure the tail deficit.
        double deficit = 0.5 - tail_min;
        CHECK(deficit <= 0.05);

        SPartFit half = spart_bound_fit(sample, 0.4);
        CHECK(half.constant > 0.0);
        CHECK(std::isfinite(half.constant));

        // Growing the sample prefix never shrinks the fit.
        std::vector<std::pair<Int, Int>> prefix(sample.begin(), sample.begin() + 10);
        SPartFit partial = spart_bound_fit(prefix, 0.4);
        CHECK(half.constant >= partial.constant * (1.0 - 1e-12));
    }
}

TEST_CASE("greatest-prime-factor margins select the documented branch") {
    SECTION("a pure power of two sits far below the power comparator") {
        Cor2Result r = cor2_check(Int(1) << 20, 1);
        CHECK(r.greatest_prime == 2);
        CHECK(r.prime_count == 1);
        CHECK(std::abs(r.power_lhs - 0.9609060278364028) < 1e-9);
        CHECK(std::abs(r.log_f0 - 13.862943611198906) < 1e-9);
        CHECK(r.power_margin < 0.0);
        // log_2 P is negative for P = 2, so the count can never sit below it.
        CHECK(r.branch == Cor2Branch::iterated_logs);
        // log_4 |F0| < 0 here: the comparator is undefined and stays absent.
        CHECK_FALSE(r.branch_value.has_value());
        CHECK_FALSE(r.branch_margin.has_value());
    }

    SECTION("a squarefree smooth number clears the power comparator") {
        Cor2Result r = cor2_check(Int(30), 1);
        CHECK(r.greatest_prime == 5);
        CHECK(r.prime_count == 3);
        CHECK(std::abs(r.power_lhs - 86.89911815417321) < 1e-9);
        CHECK(r.power_margin > 0.0);
        // omega = 3 <= log 5 / log_2 5 = 3.3819...: the root branch applies.
        CHECK(r.branch == Cor2Branch::root_of_log);
        REQUIRE(r.branch_value.has_value());
        CHECK(std::abs(*r.branch_value - 1.5038710947358973) < 1e-9);
        CHECK(std::abs(*r.branch_margin - 3.4961289052641025) < 1e-9);
    }

    SECTION("one large prime keeps the root branch") {
        Cor2Result r = cor2_check(Int(5), 1);
        CHECK(r.prime_count == 1);
        CHECK(r.branch == Cor2Branch::root_of_log);
    }

    SECTION("sign is ignored") {
        Cor2Result pos = cor2_check(Int(30), 1);
        Cor2Result neg = cor2_check(Int(-30), 1);
        CHECK(pos.power_margin == neg.power_margin);
    }

    SECTION("tiny magnitudes and degenerate degrees are rejected") {
        CHECK_THROWS_AS(cor2_check(Int(2), 1), validation_error);
        CHECK_THROWS_AS(cor2_check(Int(0), 1), validation_error);
        CHECK_THROWS_AS(cor2_check(Int(30), 0), validation_error);
    }

    SECTION("an unfactorable cofactor reports a budget error") {
        // 2^80 + 1 = 65537 * 414721 * 44479210368001: after trial division
        // the remaining cofactor still exceeds 63 bits.
        CHECK_THROWS_AS(cor2_check((Int(1) << 80) + 1, 1), budget_error);
    }
}

TEST_CASE("radical growth reports tabulate Q(f(x)) against iterated logs") {
    IntPoly f({1, 0, 1});  // X^2 + 1

    SECTION("frozen rows for small arguments") {
        RadicalGrowthReport rep = radical_growth_report(f, Int(7), Int(10));
        REQUIRE(rep.rows.size() == 4);
        CHECK(rep.skipped == 0);

        const RadicalRow& r7 = rep.rows[0];
        CHECK(r7.value == 50);
        CHECK(r7.radical == 10);
        CHECK(r7.prime_count == 2);
        CHECK(std::abs(r7.log_radical - 2.302585092994046) < 1e-12);

        const RadicalRow& r10 = rep.rows[3];
        CHECK(r10.value == 101);
        CHECK(r10.radical == 101);
        CHECK(std::abs(r10.log_radical - 4.61512051684126) < 1e-12);

        // Below e^(e^e) the three-log comparator has no defined value.
        for (const RadicalRow& row : rep.rows) CHECK_FALSE(row.three_log_comparator);
        REQUIRE(rep.two_log_fit.has_value());
        CHECK(*rep.two_log_fit > 0.0);
    }

    SECTION("arguments with |x| <= 2 are kept but flagged") {
        RadicalGrowthReport rep = radical_growth_report(f, Int(0), Int(3));
        REQUIRE(rep.rows.size() == 4);
        CHECK(rep.skipped == 3);
        CHECK(rep.rows[0].status == RadicalRowStatus::skipped_small_x);
        CHECK(rep.rows[2].status == RadicalRowStatus::skipped_small_x);
        CHECK(rep.rows[3].status == RadicalRowStatus::ok);
        CHECK(rep.rows[3].radical == 10);
    }

    SECTION("zeros of the polynomial are flagged, units give ratio zero") {
        IntPoly g({-5, 1});  // X - 5
        RadicalGrowthReport rep = radical_growth_report(g, Int(4), Int(6));
        REQUIRE(rep.rows.size() == 3);
        CHECK(rep.rows[0].status == RadicalRowStatus::ok);   // g(4) = -1
        CHECK(rep.rows[0].radical == 1);
        CHECK(rep.rows[0].two_log_ratio == 0.0);
        CHECK(rep.rows[1].status == RadicalRowStatus::skipped_zero_value);
        REQUIRE(rep.two_log_fit.has_value());
        CHECK(*rep.two_log_fit == 0.0);
    }

    SECTION("the three-log comparator appears beyond e^(e^e)") {
        RadicalGrowthReport rep =
            radical_growth_report(f, Int(4000000), Int(4000000));
        REQUIRE(rep.rows.size() == 1);
        const RadicalRow& row = rep.rows[0];
        REQUIRE(row.status == RadicalRowStatus::ok);
        REQUIRE(row.three_log_comparator.has_value());
        CHECK(std::abs(*row.three_log_comparator - 2367.121631725766) < 1e-6);
        REQUIRE(row.three_log_ratio.has_value());
        REQUIRE(rep.three_log_fit.has_value());
    }

    SECTION("the prime chain columns evaluate the intermediate inequality") {
        RadicalGrowthReport rep =
            radical_growth_report(f, Int(7), Int(7), /*with_prime_chain=*/true);
        REQUIRE(rep.rows.size() == 1);
        const RadicalRow& row = rep.rows[0];
        REQUIRE(row.chain_lhs.has_value());
        REQUIRE(row.chain_rhs.has_value());
        CHECK(std::abs(*row.chain_lhs - 0.3328649052891382) < 1e-12);
        CHECK(std::abs(*row.chain_rhs - 1.0501437775854645) < 1e-12);
    }

    SECTION("budget overruns skip the row but keep the report") {
        // f(2^40) = 2^80 + 1 leaves a cofactor beyond 63 bits (see above).
        RadicalGrowthReport rep =
            radical_growth_report(f, Int(1) << 40, Int(1) << 40);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].status == RadicalRowStatus::skipped_budget);
        CHECK(rep.skipped == 1);
        CHECK_FALSE(rep.two_log_fit.has_value());
    }

    SECTION("empty ranges and constant polynomials are rejected") {
        CHECK_THROWS_AS(radical_growth_report(f, Int(5), Int(4)), validation_error);
        CHECK_THROWS_AS(radical_growth_report(IntPoly({7}), Int(1), Int(2)),
                        validation_error);
    }
}

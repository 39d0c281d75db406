#include <catch2/catch_amalgamated.hpp>

#include "sparts/decomp.hpp"

#include <utility>
#include <vector>

using namespace sparts;
using Catch::Matchers::ContainsSubstring;

namespace {

IntPoly P(std::vector<Int> c) { return IntPoly(std::move(c)); }

FieldElement E(std::vector<Rat> c) { return c; }

MultiPoly MP(unsigned vars, std::vector<std::pair<std::vector<unsigned>, Int>> terms) {
    MultiPoly::Terms t;
    for (auto& [e, c] : terms) t.emplace(std::move(e), std::move(c));
    return MultiPoly(vars, std::move(t));
}

const std::vector<std::vector<Rat>> kPlane = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};

/// XY(X+Y) over the rationals: three factors, trivial Galois group.
DecomposableForm make_product_form() {
    NumberField q(P({0, 1}));
    AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
    LinearFormK X(q, {q.one(), q.zero()});
    LinearFormK Y(q, {q.zero(), q.one()});
    LinearFormK XY(q, {q.one(), q.one()});
    return validate_factorization(
        q, g, Rat(1), {{X, 1}, {Y, 1}, {XY, 1}},
        MP(2, {{{2, 1}, 1}, {{1, 2}, 1}}));
}

/// X^2 - 2Y^2 = (X + tY)(X - tY) over Q(sqrt 2).
DecomposableForm make_conjugate_pair_form() {
    NumberField K(P({-2, 0, 1}));
    AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
    LinearFormK plus(K, {K.one(), K.gen()});
    LinearFormK minus(K, {K.one(), K.neg(K.gen())});
    return validate_factorization(K, g, Rat(1), {{plus, 1}, {minus, 1}},
                                  MP(2, {{{2, 0}, 1}, {{0, 2}, -2}}));
}

/// X^2 Y^2 over the rationals: two factors of multiplicity two.
DecomposableForm make_squared_axes_form() {
    NumberField q(P({0, 1}));
    AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
    LinearFormK X(q, {q.one(), q.zero()});
    LinearFormK Y(q, {q.zero(), q.one()});
    return validate_factorization(q, g, Rat(1), {{X, 2}, {Y, 2}},
                                  MP(2, {{{2, 2}, 1}}));
}

/**
 * X^3 - 2Y^3 over the degree-6 splitting field Q(theta) with
 * theta = 2^{1/3} + w, w a primitive cube root of unity. The generator
 * coordinates of the three cube roots of 2 and of the six automorphism
 * images below are re-certified on construction: every image must be a
 * root of the minimal polynomial, the set must close under composition,
 * and the factorization must expand to X^3 - 2Y^3 exactly.
 */
struct CubicData {
    NumberField K;
    AutomorphismGroup group;
    std::vector<FieldElement> roots;  // the three cube roots of 2
};

CubicData make_cubic_data() {
    NumberField K(P({9, 9, 0, 3, 6, 3, 1}));  // t^6 + 3t^5 + 6t^4 + 3t^3 + 9t + 9
    FieldElement r1 = E({Rat(2), Rat(1), Rat(-2, 3), Rat(2, 3), Rat(1, 3), Rat(2, 9)});
    FieldElement r2 = E({Rat(1), Rat(0), Rat(2, 3), Rat(2, 3), Rat(1, 3), Rat(1, 9)});
    FieldElement r3 = E({Rat(-3), Rat(-1), Rat(0), Rat(-4, 3), Rat(-2, 3), Rat(-1, 3)});
    std::vector<FieldElement> images = {
        E({Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0)}),
        E({Rat(3), Rat(1), Rat(-4, 3), Rat(4, 3), Rat(2, 3), Rat(4, 9)}),
        E({Rat(-1), Rat(0), Rat(4, 3), Rat(0), Rat(0), Rat(-1, 9)}),
        E({Rat(2), Rat(0), Rat(0), Rat(4, 3), Rat(2, 3), Rat(1, 3)}),
        E({Rat(-5), Rat(-1), Rat(2, 3), Rat(-2), Rat(-1), Rat(-5, 9)}),
        E({Rat(-2), Rat(-1), Rat(-2, 3), Rat(-2, 3), Rat(-1, 3), Rat(-1, 9)}),
    };
    AutomorphismGroup g = validate_automorphisms(K, images);
    return CubicData{std::move(K), std::move(g), {r1, r2, r3}};
}

DecomposableForm make_cubic_form() {
    CubicData data = make_cubic_data();
    std::vector<WeightedForm> factors;
    for (const FieldElement& root : data.roots)
        factors.push_back(
            WeightedForm{LinearFormK(data.K, {data.K.one(), data.K.neg(root)}), 1});
    return validate_factorization(data.K, data.group, Rat(1), std::move(factors),
                                  MP(2, {{{3, 0}, 1}, {{0, 3}, -2}}));
}

/// X1 X2 (X1 + X2) X3 over the rationals, in three variables.
DecomposableForm make_three_variable_form() {
    NumberField q(P({0, 1}));
    AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
    LinearFormK X1(q, {q.one(), q.zero(), q.zero()});
    LinearFormK X2(q, {q.zero(), q.one(), q.zero()});
    LinearFormK X12(q, {q.one(), q.one(), q.zero()});
    LinearFormK X3(q, {q.zero(), q.zero(), q.one()});
    return validate_factorization(q, g, Rat(1), {{X1, 1}, {X2, 1}, {X12, 1}, {X3, 1}},
                                  MP(3, {{{2, 1, 1}, 1}, {{1, 2, 1}, 1}}));
}

}  // namespace

TEST_CASE("factorizations validate by exact expansion and orbit checks") {
    SECTION("the corpus forms pass with the right shape") {
        DecomposableForm f1 = make_product_form();
        CHECK(f1.factor_count() == 3);
        CHECK(f1.degree() == 3);
        CHECK(f1.vars() == 2);

        DecomposableForm f2 = make_conjugate_pair_form();
        CHECK(f2.factor_count() == 2);
        CHECK(f2.degree() == 2);

        DecomposableForm f3 = make_cubic_form();
        CHECK(f3.factor_count() == 3);
        CHECK(f3.degree() == 3);
        CHECK(f3.group().images.size() == 6);

        DecomposableForm f4 = make_squared_axes_form();
        CHECK(f4.factor_count() == 2);
        CHECK(f4.degree() == 4);
    }

    SECTION("a missing factor is an expansion mismatch") {
        NumberField K(P({-2, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        LinearFormK plus(K, {K.one(), K.gen()});
        CHECK_THROWS_WITH(validate_factorization(K, g, Rat(1), {{plus, 1}},
                                                 MP(2, {{{2, 0}, 1}, {{0, 2}, -2}})),
                          ContainsSubstring("expand"));
    }

    SECTION("a wrong integer form is an expansion mismatch") {
        NumberField K(P({-2, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        LinearFormK plus(K, {K.one(), K.gen()});
        LinearFormK minus(K, {K.one(), K.neg(K.gen())});
        CHECK_THROWS_WITH(validate_factorization(K, g, Rat(1), {{plus, 1}, {minus, 1}},
                                                 MP(2, {{{2, 0}, 1}, {{0, 2}, -3}})),
                          ContainsSubstring("expand"));
    }

    SECTION("proportional factors are rejected as such") {
        NumberField q(P({0, 1}));
        AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
        LinearFormK X(q, {q.one(), q.zero()});
        LinearFormK X2(q, {q.from_rat(Rat(2)), q.zero()});
        CHECK_THROWS_WITH(validate_factorization(q, g, Rat(1), {{X, 1}, {X2, 1}},
                                                 MP(2, {{{2, 0}, 2}})),
                          ContainsSubstring("proportional"));
    }

    SECTION("zero constants and empty factor lists are rejected") {
        NumberField q(P({0, 1}));
        AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
        LinearFormK X(q, {q.one(), q.zero()});
        CHECK_THROWS_AS(validate_factorization(q, g, Rat(0), {{X, 1}},
                                               MP(2, {})),
                        validation_error);
        CHECK_THROWS_AS(validate_factorization(q, g, Rat(1), {}, MP(2, {})),
                        validation_error);
        CHECK_THROWS_AS(validate_factorization(q, g, Rat(1), {{X, 0}},
                                               MP(2, {{{1, 0}, 1}})),
                        validation_error);
    }

    SECTION("a rational constant can rescale the factors") {
        NumberField q(P({0, 1}));
        AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
        LinearFormK X2(q, {q.from_rat(Rat(2)), q.zero()});
        LinearFormK Y(q, {q.zero(), q.one()});
        DecomposableForm f = validate_factorization(q, g, Rat(1, 2), {{X2, 1}, {Y, 1}},
                                                    MP(2, {{{1, 1}, 1}}));
        CHECK(f.degree() == 2);
    }
}

TEST_CASE("the splitting field data is certified by the library itself") {
    CubicData data = make_cubic_data();
    const NumberField& K = data.K;

    SECTION("the three roots cube to 2 and sum to zero") {
        for (const FieldElement& r : data.roots)
            CHECK(K.mul(K.mul(r, r), r) == K.from_rat(Rat(2)));
        FieldElement sum = K.add(K.add(data.roots[0], data.roots[1]), data.roots[2]);
        CHECK(K.is_zero(sum));
    }

    SECTION("an order-3 automorphism cycles the roots") {
        // images[2] sends the real cube root to the next conjugate.
        CHECK(K.apply(data.group.images[2], data.roots[0]) == data.roots[1]);
        CHECK(K.apply(data.group.images[2], data.roots[1]) == data.roots[2]);
        CHECK(K.apply(data.group.images[2], data.roots[2]) == data.roots[0]);
    }

    SECTION("the group has order six with identity first") {
        CHECK(data.group.identity == 0);
        CHECK(data.group.images.size() == 6);
    }

    SECTION("the factor permutations realize a 3-cycle and a transposition") {
        DecomposableForm f = make_cubic_form();
        CHECK(f.orbit_map(2) == std::vector<unsigned>{1, 2, 0});
        CHECK(f.orbit_map(1) == std::vector<unsigned>{0, 2, 1});
        CHECK(f.orbit_map(0) == std::vector<unsigned>{0, 1, 2});
    }
}

TEST_CASE("factored and expanded evaluations agree exactly") {
    std::vector<DecomposableForm> corpus;
    corpus.push_back(make_product_form());
    corpus.push_back(make_conjugate_pair_form());
    corpus.push_back(make_cubic_form());
    corpus.push_back(make_squared_axes_form());

    const std::vector<std::vector<Int>> points = {
        {Int(1), Int(1)}, {Int(2), Int(-3)}, {Int(5), Int(7)},
        {Int(-4), Int(9)}, {Int(3), Int(0)}, {Int(0), Int(-2)},
    };
    for (const DecomposableForm& F : corpus) {
        for (const auto& x : points) {
            FieldElement lhs = F.evaluate_factored(x);
            FieldElement rhs = F.field().from_rat(Rat(F.integer_form().evaluate(x)));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("factor graphs expose triangular connectedness") {
    SECTION("three concurrent lines form one triangle") {
        FactorGraph g = factor_graph(make_product_form());
        CHECK(g.edges == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {0, 2}, {1, 2}});
        CHECK(g.component_count == 1);
        CHECK(g.triangularly_connected);
    }

    SECTION("two conjugate factors have no third witness") {
        FactorGraph g = factor_graph(make_conjugate_pair_form());
        CHECK(g.edges.empty());
        CHECK(g.component_count == 2);
        CHECK_FALSE(g.triangularly_connected);
    }

    SECTION("the conjugate cubic factors form one triangle") {
        FactorGraph g = factor_graph(make_cubic_form());
        CHECK(g.edges.size() == 3);
        CHECK(g.component_count == 1);
        CHECK(g.triangularly_connected);
    }

    SECTION("squared axes stay in separate components") {
        FactorGraph g = factor_graph(make_squared_axes_form());
        CHECK(g.edges.empty());
        CHECK(g.component_count == 2);
        CHECK_FALSE(g.triangularly_connected);
    }
}

TEST_CASE("effective conditions combine rank and component spans") {
    SECTION("one component with full rank satisfies both") {
        EffectiveConditions c = check_effective_conditions(make_product_form());
        CHECK(c.full_rank);
        CHECK(c.components_span_last);
        CHECK(c.component_count == 1);
    }

    SECTION("two singleton components cannot span the last variable") {
        EffectiveConditions c = check_effective_conditions(make_conjugate_pair_form());
        CHECK(c.full_rank);
        CHECK_FALSE(c.components_span_last);
        CHECK(c.component_count == 2);
    }

    SECTION("squared axes have full rank but fail the span condition") {
        EffectiveConditions c = check_effective_conditions(make_squared_axes_form());
        CHECK(c.full_rank);
        CHECK_FALSE(c.components_span_last);
        CHECK(c.component_count == 2);
    }

    SECTION("the cubic has a single component") {
        EffectiveConditions c = check_effective_conditions(make_cubic_form());
        CHECK(c.full_rank);
        CHECK(c.components_span_last);
        CHECK(c.component_count == 1);
    }
}

TEST_CASE("the finiteness criterion quantifies over Galois-proper subsets") {
    CHECK_FALSE(check_finiteness_condition(make_conjugate_pair_form()));
    CHECK(check_finiteness_condition(make_cubic_form()));
    CHECK(check_finiteness_condition(make_product_form()));
    CHECK_FALSE(check_finiteness_condition(make_squared_axes_form()));

    SECTION("extra forms must share the variable count") {
        DecomposableForm f = make_product_form();
        NumberField q(P({0, 1}));
        LinearFormK wrong(q, {q.one(), q.zero(), q.zero()});
        CHECK_THROWS_AS(check_finiteness_condition(f, {wrong}), validation_error);
    }

    SECTION("seventeen factors exceed the enumeration cap") {
        NumberField q(P({0, 1}));
        AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
        std::vector<WeightedForm> factors;
        MultiPoly product = MP(2, {{{0, 0}, 1}});
        for (int k = 0; k < 16; ++k) {
            LinearFormK f(q, {q.one(), q.from_rat(Rat(k))});
            factors.push_back({f, 1});
            product = product * MP(2, {{{1, 0}, 1}, {{0, 1}, k}});
        }
        LinearFormK Y(q, {q.zero(), q.one()});
        factors.push_back({Y, 1});
        product = product * MP(2, {{{0, 1}, 1}});
        DecomposableForm big = validate_factorization(q, g, Rat(1), std::move(factors),
                                                      std::move(product));
        CHECK(big.factor_count() == 17);
        CHECK_THROWS_AS(check_finiteness_condition(big), budget_error);
        CHECK_THROWS_AS(q_values(big, kPlane), budget_error);
    }
}

TEST_CASE("non-vanishing over the rationals is a kernel computation") {
    CHECK(check_nonvanishing(make_conjugate_pair_form()));
    CHECK_FALSE(check_nonvanishing(make_product_form()));
    CHECK(check_nonvanishing(make_cubic_form()));
    CHECK_FALSE(check_nonvanishing(make_squared_axes_form()));
}

TEST_CASE("q-values rank every subset on a subspace") {
    SECTION("three concurrent lines on the plane") {
        QValuesResult q = q_values(make_product_form(), kPlane);
        CHECK(q.reports.size() == 7);
        CHECK(q.q_full_set == Rat(3, 2));
        REQUIRE(q.q_proper_max.has_value());
        CHECK(*q.q_proper_max == 1);
        CHECK(q.critical_sets == std::vector<std::vector<unsigned>>{{0, 1, 2}});
        CHECK(q.minimal_critical_sets == std::vector<std::vector<unsigned>>{{0, 1, 2}});

        for (const SubsetReport& rep : q.reports) {
            CHECK(rep.gal_proper);  // trivial group
            REQUIRE(rep.q_value.has_value());
            if (rep.subset.size() == 1) {
                CHECK(rep.rank_on_subspace == 1);
                CHECK(*rep.q_value == 1);
            }
            if (rep.subset.size() == 3) CHECK(*rep.q_value == Rat(3, 2));
        }
    }

    SECTION("conjugate pair: every subset is critical") {
        QValuesResult q = q_values(make_conjugate_pair_form(), kPlane);
        CHECK(q.q_full_set == 1);
        REQUIRE(q.q_proper_max.has_value());
        CHECK(*q.q_proper_max == 1);
        CHECK(q.critical_sets.size() == 3);
        CHECK(q.minimal_critical_sets ==
              std::vector<std::vector<unsigned>>{{0}, {1}});
        for (const SubsetReport& rep : q.reports) CHECK(rep.critical);
    }

    SECTION("the cubic mirrors the product form") {
        QValuesResult q = q_values(make_cubic_form(), kPlane);
        CHECK(q.q_full_set == Rat(3, 2));
        CHECK(*q.q_proper_max == 1);
        CHECK(q.minimal_critical_sets == std::vector<std::vector<unsigned>>{{0, 1, 2}});

        // Conjugate pairs are moved off themselves by the root 3-cycle.
        for (const SubsetReport& rep : q.reports) {
            if (rep.subset.size() == 1 || rep.subset.size() == 3)
                CHECK(rep.gal_proper);
            else
                CHECK_FALSE(rep.gal_proper);
        }
    }

    SECTION("subspaces need dimension at least two") {
        CHECK_THROWS_AS(q_values(make_product_form(), {{Rat(1), Rat(0)}}),
                        validation_error);
    }
}

TEST_CASE("the subspace invariant is exact in two variables") {
    SECTION("frozen values on the plane") {
        COfFResult a = c_of_F(make_product_form());
        CHECK(a.value == Rat(2, 3));
        CHECK(a.exact);
        CHECK(a.scores.size() == 1);
        CHECK(a.scores[0].witness_subset == std::vector<unsigned>{0});

        COfFResult b = c_of_F(make_cubic_form());
        CHECK(b.value == Rat(2, 3));
        CHECK(b.exact);

        COfFResult c = c_of_F(make_conjugate_pair_form());
        CHECK(c.value == 1);
        CHECK(c.exact);
    }

    SECTION("user subspaces join the pool") {
        std::vector<std::vector<std::vector<Rat>>> extra = {kPlane};
        COfFResult a = c_of_F(make_product_form(), extra);
        CHECK(a.value == Rat(2, 3));
        CHECK(a.scores.size() == 2);
    }
}

TEST_CASE("dependence graphs collect minimal dependent sets") {
    SECTION("three concurrent lines form one dependent triple") {
        DependenceGraph g = dependence_graph(make_product_form(), kPlane);
        CHECK(g.minimal_dependent_sets ==
              std::vector<std::vector<unsigned>>{{0, 1, 2}});
        CHECK(g.edges.size() == 3);
        CHECK(g.connected);
    }

    SECTION("an independent pair gives an edgeless graph") {
        DependenceGraph g = dependence_graph(make_conjugate_pair_form(), kPlane);
        CHECK(g.minimal_dependent_sets.empty());
        CHECK(g.edges.empty());
        CHECK(g.component_count == 2);
        CHECK_FALSE(g.connected);
    }

    SECTION("the conjugate cubic factors form one dependent triple") {
        DependenceGraph g = dependence_graph(make_cubic_form(), kPlane);
        CHECK(g.minimal_dependent_sets ==
              std::vector<std::vector<unsigned>>{{0, 1, 2}});
        CHECK(g.connected);
    }

    SECTION("a factor vanishing on the subspace is rejected by index") {
        DecomposableForm f = make_three_variable_form();
        std::vector<std::vector<Rat>> floor_plane = {
            {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
        CHECK_THROWS_WITH(dependence_graph(f, floor_plane),
                          ContainsSubstring("factor 3"));
    }

    SECTION("an isolated factor disconnects the graph") {
        DecomposableForm f = make_three_variable_form();
        std::vector<std::vector<Rat>> space = {{Rat(1), Rat(0), Rat(0)},
                                               {Rat(0), Rat(1), Rat(0)},
                                               {Rat(0), Rat(0), Rat(1)}};
        DependenceGraph g = dependence_graph(f, space);
        CHECK(g.minimal_dependent_sets ==
              std::vector<std::vector<unsigned>>{{0, 1, 2}});
        CHECK(g.component_count == 2);
        CHECK_FALSE(g.connected);
    }
}

TEST_CASE("rank chains reach the subspace dimension under the guard") {
    SECTION("each seed of the product form yields the single triple") {
        DecomposableForm f = make_product_form();
        for (unsigned seed = 0; seed < 3; ++seed) {
            RankChain chain = rank_chain(f, kPlane, seed);
            CHECK(chain.sets == std::vector<std::vector<unsigned>>{{0, 1, 2}});
            CHECK(chain.union_ranks == std::vector<unsigned>{2});
        }
    }

    SECTION("the cubic behaves identically") {
        RankChain chain = rank_chain(make_cubic_form(), kPlane, 0);
        CHECK(chain.sets.size() == 1);
        CHECK(chain.union_ranks == std::vector<unsigned>{2});
    }

    SECTION("forms failing the finiteness criterion are rejected up front") {
        CHECK_THROWS_WITH(rank_chain(make_conjugate_pair_form(), kPlane, 0),
                          ContainsSubstring("finiteness"));
        CHECK_THROWS_WITH(rank_chain(make_three_variable_form(),
                                     {{Rat(1), Rat(0), Rat(0)},
                                      {Rat(0), Rat(1), Rat(0)},
                                      {Rat(0), Rat(0), Rat(1)}},
                                     0),
                          ContainsSubstring("finiteness"));
    }

    SECTION("seed indices are range checked") {
        CHECK_THROWS_AS(rank_chain(make_product_form(), kPlane, 9), validation_error);
    }
}

TEST_CASE("discriminant forms are built from embedding images") {
    SECTION("the square root of two gives 8 X^2") {
        NumberField K(P({-2, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        DecomposableForm f =
            discriminant_form(K, g, {{K.gen()}, {K.neg(K.gen())}});
        CHECK(f.integer_form() == MP(1, {{{2}, 8}}));
        CHECK(f.factor_count() == 1);
        CHECK(f.degree() == 2);

        EffectiveConditions c = check_effective_conditions(f);
        CHECK(c.full_rank);
        CHECK(c.components_span_last);
        CHECK(c.component_count == 1);
    }

    SECTION("the imaginary unit gives -4 X^2") {
        NumberField K(P({1, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        DecomposableForm f =
            discriminant_form(K, g, {{K.gen()}, {K.neg(K.gen())}});
        CHECK(f.integer_form() == MP(1, {{{2}, -4}}));
    }

    SECTION("shifting the basis element leaves the discriminant unchanged") {
        NumberField K(P({-2, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        FieldElement one_plus = K.add(K.one(), K.gen());
        FieldElement one_minus = K.sub(K.one(), K.gen());
        DecomposableForm f = discriminant_form(K, g, {{one_plus}, {one_minus}});
        CHECK(f.integer_form() == MP(1, {{{2}, 8}}));
    }

    SECTION("non-conjugate embedding data is rejected") {
        NumberField K(P({-2, 0, 1}));
        AutomorphismGroup g = validate_automorphisms(K, {K.gen(), K.neg(K.gen())});
        CHECK_THROWS_WITH(discriminant_form(K, g, {{K.gen()}, {K.one()}}),
                          ContainsSubstring("irrational"));
        CHECK_THROWS_WITH(discriminant_form(K, g, {{K.gen()}, {K.gen()}}),
                          ContainsSubstring("agree"));
    }
}

TEST_CASE("structural facts hold across the corpus") {
    std::vector<DecomposableForm> corpus;
    corpus.push_back(make_product_form());
    corpus.push_back(make_conjugate_pair_form());
    corpus.push_back(make_cubic_form());
    corpus.push_back(make_squared_axes_form());

    for (const DecomposableForm& F : corpus) {
        EffectiveConditions eff = check_effective_conditions(F);
        bool finite = check_finiteness_condition(F);

        // Both effective conditions together imply the finiteness criterion.
        if (eff.full_rank && eff.components_span_last) CHECK(finite);

        bool nonvanishing = check_nonvanishing(F);
        if (finite && nonvanishing) {
            COfFResult c = c_of_F(F);
            CHECK(c.value < 1);
        }

        if (finite) {
            // With the criterion in force the dependence graph is connected.
            DependenceGraph g = dependence_graph(F, kPlane);
            CHECK(g.connected);

            // Every automorphism acts on the dependence graph as a graph
            // automorphism.
            for (unsigned gi = 0; gi < F.group().images.size(); ++gi) {
                const std::vector<unsigned>& perm = F.orbit_map(gi);
                for (const auto& [a, b] : g.edges) {
                    unsigned ia = perm[a], ib = perm[b];
                    if (ia > ib) std::swap(ia, ib);
                    CHECK(std::find(g.edges.begin(), g.edges.end(),
                                    std::make_pair(ia, ib)) != g.edges.end());
                }
            }
        }
    }
}

#include <catch2/catch_amalgamated.hpp>

#include "sparts/numfield.hpp"

#include <vector>

using namespace sparts;

namespace {

IntPoly P(std::vector<Int> c) { return IntPoly(std::move(c)); }

FieldElement E(std::vector<Rat> c) { return c; }

}  // namespace

TEST_CASE("number field construction certifies or refutes irreducibility") {
    SECTION("quadratic and cubic fields certify when no rational root exists") {
        NumberField sqrt2(P({-2, 0, 1}));
        CHECK(sqrt2.degree() == 2);
        CHECK(sqrt2.irreducibility_certified());

        NumberField cbrt2(P({-2, 0, 0, 1}));
        CHECK(cbrt2.degree() == 3);
        CHECK(cbrt2.irreducibility_certified());

        NumberField omega(P({1, 1, 1}));
        CHECK(omega.irreducibility_certified());
    }

    SECTION("degree one is a field presentation of the rationals") {
        NumberField q(P({0, 1}));
        CHECK(q.degree() == 1);
        CHECK(q.irreducibility_certified());
        CHECK(q.gen() == q.zero());

        NumberField shifted(P({3, 1}));
        CHECK(shifted.gen() == shifted.from_rat(Rat(-3)));
    }

    SECTION("rational roots are rejected at any degree") {
        CHECK_THROWS_AS(NumberField(P({-4, 0, 1})), validation_error);   // t^2 - 4
        CHECK_THROWS_AS(NumberField(P({-1, 0, 1})), validation_error);   // t^2 - 1
        CHECK_THROWS_AS(NumberField(P({0, 0, 0, 1})), validation_error); // t^3
        CHECK_THROWS_AS(NumberField(P({-32, 0, 0, 0, 0, 1})), validation_error);
    }

    SECTION("degree four splittings into quadratics are detected") {
        // t^4 + 4 = (t^2 + 2t + 2)(t^2 - 2t + 2) despite having no rational root.
        CHECK_THROWS_AS(NumberField(P({4, 0, 0, 0, 1})), validation_error);
        // t^4 + 1 and the fifth cyclotomic polynomial survive the same scan.
        CHECK(NumberField(P({1, 0, 0, 0, 1})).irreducibility_certified());
        CHECK(NumberField(P({1, 1, 1, 1, 1})).irreducibility_certified());
    }

    SECTION("degree five and up is accepted but flagged uncertified") {
        NumberField k(P({-1, -1, 0, 0, 0, 1}));  // t^5 - t - 1
        CHECK(k.degree() == 5);
        CHECK_FALSE(k.irreducibility_certified());
    }

    SECTION("non-monic and constant inputs are rejected") {
        CHECK_THROWS_AS(NumberField(P({-1, 0, 2})), validation_error);
        CHECK_THROWS_AS(NumberField(P({7})), validation_error);
    }
}

TEST_CASE("field arithmetic is exact and satisfies the field axioms") {
    NumberField K(P({-2, 0, 1}));  // Q(sqrt 2) with t^2 = 2
    const FieldElement t = K.gen();

    SECTION("generator multiplies to the minimal relation") {
        CHECK(K.mul(t, t) == K.from_rat(Rat(2)));
        CHECK(K.add(K.add(K.one(), t), K.sub(K.one(), t)) == K.from_rat(Rat(2)));
    }

    SECTION("inverses come out exactly") {
        // (1 + t)(-1 + t) = t^2 - 1 = 1, so 1/(1 + t) = -1 + t.
        FieldElement a = K.add(K.one(), t);
        CHECK(K.inverse(a) == E({Rat(-1), Rat(1)}));
        CHECK(K.div(a, a) == K.one());
        CHECK_THROWS_AS(K.inverse(K.zero()), validation_error);
    }

    SECTION("axioms hold on a sample grid") {
        std::vector<FieldElement> sample = {
            K.one(),
            t,
            E({Rat(3), Rat(-2)}),
            E({Rat(-1, 2), Rat(5, 3)}),
            E({Rat(0), Rat(7)}),
        };
        for (const auto& a : sample) {
            for (const auto& b : sample) {
                CHECK(K.mul(a, b) == K.mul(b, a));
                for (const auto& c : sample) {
                    CHECK(K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)));
                    CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
                }
                if (!K.is_zero(b)) CHECK(K.mul(K.div(a, b), b) == a);
            }
            if (!K.is_zero(a)) CHECK(K.mul(a, K.inverse(a)) == K.one());
        }
    }

    SECTION("cubic field inverses") {
        NumberField C(P({-2, 0, 0, 1}));  // t^3 = 2
        FieldElement u = C.add(C.one(), C.gen());
        // (1 + t)(1 - t + t^2) = 1 + t^3 = 3.
        CHECK(C.inverse(u) == E({Rat(1, 3), Rat(-1, 3), Rat(1, 3)}));
        CHECK(C.mul(C.mul(C.gen(), C.gen()), C.gen()) == C.from_rat(Rat(2)));
    }

    SECTION("element size validation") {
        CHECK_THROWS_AS(K.element({Rat(1)}), validation_error);
        CHECK_THROWS_AS(K.add(t, E({Rat(1), Rat(0), Rat(0)})), validation_error);
    }
}

TEST_CASE("automorphism groups are validated, never computed") {
    SECTION("the conjugation group of a quadratic field") {
        NumberField K(P({-2, 0, 1}));
        const FieldElement t = K.gen();
        AutomorphismGroup g = validate_automorphisms(K, {t, K.neg(t)});
        CHECK(g.images.size() == 2);
        CHECK(g.identity == 0);
        CHECK(g.table == std::vector<std::vector<unsigned>>{{0, 1}, {1, 0}});

        // sigma(3 + 2t) = 3 - 2t under the non-trivial automorphism.
        CHECK(K.apply(g.images[1], E({Rat(3), Rat(2)})) == E({Rat(3), Rat(-2)}));
    }

    SECTION("the trivial group of the rational field") {
        NumberField q(P({0, 1}));
        AutomorphismGroup g = validate_automorphisms(q, {q.gen()});
        CHECK(g.table == std::vector<std::vector<unsigned>>{{0}});
        CHECK(g.identity == 0);
    }

    SECTION("a cyclic group of order four on the fifth cyclotomic field") {
        NumberField K(P({1, 1, 1, 1, 1}));
        const FieldElement t = K.gen();
        FieldElement t2 = K.mul(t, t);
        FieldElement t3 = K.mul(t2, t);
        FieldElement t4 = K.mul(t3, t);
        AutomorphismGroup g = validate_automorphisms(K, {t, t2, t3, t4});
        CHECK(g.identity == 0);
        // t -> t^2 composed with itself sends t to t^4.
        CHECK(g.table[1][1] == 3);
        // t -> t^2 composed with t -> t^3 sends t to t^6 = t.
        CHECK(g.table[1][2] == 0);

        // Automorphisms respect products.
        FieldElement a = E({Rat(1), Rat(1), Rat(0), Rat(0)});
        FieldElement b = E({Rat(2), Rat(0), Rat(0), Rat(-1)});
        CHECK(K.apply(t2, K.mul(a, b)) == K.mul(K.apply(t2, a), K.apply(t2, b)));
    }

    SECTION("wrong cardinality is rejected") {
        NumberField K(P({-2, 0, 1}));
        CHECK_THROWS_AS(validate_automorphisms(K, {K.gen()}), validation_error);
    }

    SECTION("images that are not roots are rejected") {
        NumberField C(P({-2, 0, 0, 1}));
        FieldElement tsq = C.mul(C.gen(), C.gen());
        CHECK_THROWS_AS(validate_automorphisms(C, {C.gen(), tsq, C.one()}),
                        validation_error);
    }

    SECTION("duplicate images are rejected") {
        NumberField K(P({-2, 0, 1}));
        CHECK_THROWS_AS(validate_automorphisms(K, {K.gen(), K.gen()}), validation_error);
    }
}

TEST_CASE("linear forms over the field transform and rank exactly") {
    NumberField K(P({-2, 0, 1}));
    const FieldElement t = K.gen();
    const FieldElement one = K.one(), zero = K.zero();

    LinearFormK x_plus_ty(K, {one, t});
    LinearFormK x_minus_ty(K, {one, K.neg(t)});

    SECTION("an automorphism maps X + tY to X - tY") {
        CHECK(apply_automorphism(K, K.neg(t), x_plus_ty) == x_minus_ty);
        CHECK(apply_automorphism(K, t, x_plus_ty) == x_plus_ty);
    }

    SECTION("identically zero forms are rejected") {
        CHECK_THROWS_AS(LinearFormK(K, {zero, zero}), validation_error);
        CHECK_THROWS_AS(LinearFormK(K, std::vector<FieldElement>{}), validation_error);
    }

    SECTION("conjugate forms span the plane") {
        CHECK(rank_over_K(K, {x_plus_ty, x_minus_ty}) == 2);
        CHECK(rank_over_K(K, {x_plus_ty}) == 1);
        CHECK(rank_over_K(K, {}) == 0);
    }

    SECTION("dependence over the field is detected even when absent over the rationals") {
        // t (X + tY) = tX + 2Y, so these two are proportional over K.
        LinearFormK other(K, {t, K.from_rat(Rat(2))});
        CHECK(rank_over_K(K, {x_plus_ty, other}) == 1);
    }

    SECTION("three forms on two variables over the rationals") {
        NumberField q(P({0, 1}));
        LinearFormK X(q, {q.one(), q.zero()});
        LinearFormK Y(q, {q.zero(), q.one()});
        LinearFormK XY(q, {q.one(), q.one()});
        CHECK(rank_over_K(q, {X, Y, XY}) == 2);
    }

    SECTION("rank scales and permutes invariantly") {
        LinearFormK scaled(K, {K.add(one, t), K.mul(K.add(one, t), t)});
        CHECK(rank_over_K(K, {scaled, x_minus_ty}) == 2);
        CHECK(rank_over_K(K, {x_minus_ty, x_plus_ty}) ==
              rank_over_K(K, {x_plus_ty, x_minus_ty}));
    }
}

TEST_CASE("restricted ranks substitute a rational subspace basis") {
    NumberField q(P({0, 1}));
    LinearFormK X(q, {q.one(), q.zero()});
    LinearFormK Y(q, {q.zero(), q.one()});
    LinearFormK X_minus_Y(q, {q.one(), q.element({Rat(-1)})});

    SECTION("a form vanishing on the diagonal has restricted rank zero") {
        CHECK(rank_over_K(q, {X_minus_Y}, {{Rat(1), Rat(1)}}) == 0);
        CHECK(rank_over_K(q, {X_minus_Y}) == 1);
    }

    SECTION("the full space reproduces the plain rank") {
        NumberField K(P({-2, 0, 1}));
        LinearFormK a(K, {K.one(), K.gen()});
        LinearFormK b(K, {K.one(), K.neg(K.gen())});
        std::vector<std::vector<Rat>> full = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
        CHECK(rank_over_K(K, {a, b}, full) == 2);
    }

    SECTION("restricted rank never exceeds the plain rank or the dimension") {
        std::vector<std::vector<Rat>> diag = {{Rat(1), Rat(1)}};
        std::vector<LinearFormK> fams[] = {{X, Y}, {X, Y, X_minus_Y}, {X_minus_Y}};
        for (const auto& fam : fams) {
            unsigned plain = rank_over_K(q, fam);
            unsigned restricted = rank_over_K(q, fam, diag);
            CHECK(restricted <= plain);
            CHECK(restricted <= diag.size());
        }
    }

    SECTION("two independent directions recover rank two from three forms") {
        std::vector<std::vector<Rat>> basis = {{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
        LinearFormK XY(q, {q.one(), q.one()});
        CHECK(rank_over_K(q, {X, Y, XY}, basis) == 2);
    }

    SECTION("dependent restriction bases are rejected") {
        std::vector<std::vector<Rat>> dep = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
        CHECK_THROWS_AS(rank_over_K(q, {X, Y}, dep), validation_error);
        std::vector<std::vector<Rat>> ragged = {{Rat(1), Rat(1)}, {Rat(1)}};
        CHECK_THROWS_AS(rank_over_K(q, {X, Y}, ragged), validation_error);
    }
}

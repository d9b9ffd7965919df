#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

TEST_CASE("squarefree_decompose") {
    auto d1 = squarefree_decompose(P({"0", "0", "-1", "1"}));
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == std::pair<Poly, unsigned>{P({"-1", "1"}), 1});
    CHECK(d1[1] == std::pair<Poly, unsigned>{X, 2});
    auto d2 = squarefree_decompose(P({"1", "0", "1"}));
    REQUIRE(d2.size() == 1);
    CHECK(d2[0].second == 1);
    auto d3 = squarefree_decompose(pow(P({"-1", "1"}), 2) * pow(P({"1", "1"}), 2));
    REQUIRE(d3.size() == 1);
    CHECK(d3[0] == std::pair<Poly, unsigned>{P({"-1", "0", "1"}), 2});
}

TEST_CASE("rational_roots") {
    CHECK(rational_roots(P({"-1", "-1", "2"})) == std::vector<Rational>{Q("-1/2"), Q("1")});
    CHECK(rational_roots(P({"1", "0", "1"})).empty());
    CHECK(rational_roots(X * (X - C(1)) * (X - C(2))) == std::vector<Rational>{Q("0"), Q("1"), Q("2")});
}

TEST_CASE("factor_over_Q on the classic examples") {
    auto f1 = F(P({"-1", "0", "0", "0", "1"}));
    CHECK(f1.content() == 1);
    REQUIRE(f1.factors().size() == 3);
    CHECK(f1.multiplicity_of(P({"-1", "1"})) == 1);
    CHECK(f1.multiplicity_of(P({"1", "1"})) == 1);
    CHECK(f1.multiplicity_of(P({"1", "0", "1"})) == 1);

    auto f2 = F(P({"0", "1/2", "1/2"}));
    CHECK(f2.content() == Q("1/2"));
    CHECK(f2.factors().size() == 2);
    CHECK(f2.multiplicity_of(X) == 1);
    CHECK(f2.multiplicity_of(X + C(1)) == 1);

    auto f3 = F(P({"0", "-6", "6"}));
    CHECK(f3.content() == 6);
    CHECK(f3.multiplicity_of(X) == 1);
    CHECK(f3.multiplicity_of(X - C(1)) == 1);
}

TEST_CASE("factors are ordered by degree then by coefficient magnitude") {
    auto f = F(X * (X - C(1)) * (X + C(1)) * (X * X + C(1)));
    REQUIRE(f.factors().size() == 4);
    CHECK(f.factors()[0].poly == X);
    CHECK(f.factors()[1].poly == X + C(1));
    CHECK(f.factors()[2].poly == X - C(1));
    CHECK(f.factors()[3].poly == X * X + C(1));
}

TEST_CASE("irreducible quartics and Aurifeuillean splits") {
    CHECK(F(P({"4", "0", "0", "0", "1"})).factors().size() == 2);
    CHECK(is_irreducible(P({"1", "0", "-10", "0", "1"})));
    CHECK(!is_irreducible(P({"-1", "0", "1"})));
}

TEST_CASE("factorisation expands back on random products") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-9, 9);
    for (int i = 0; i < 40; ++i) {
        Poly g = C(Rational(c(rng) == 0 ? 1 : c(rng) | 1));
        for (int k = 0; k < 3; ++k) {
            int deg = 1 + static_cast<int>(rng() % 3);
            std::vector<Rational> v;
            for (int j = 0; j < deg; ++j) v.emplace_back(c(rng));
            v.emplace_back(1 + static_cast<int>(rng() % 3));
            g = g * Poly(v);
        }
        auto f = F(g);
        CHECK(f.expand() == g);
        for (const auto& x : f.factors()) CHECK(is_irreducible(x.poly));
    }
}

TEST_CASE("certified factorisations are checked") {
    CHECK_NOTHROW(certify_factored(Q("1/2"), {{X, 1}, {X + C(1), 1}}));
    CHECK_THROWS_AS(certify_factored(Q("1"), {{X * X - C(1), 1}}), InputError);
    CHECK_THROWS_AS(certify_factored(Q("1"), {{X * C(2), 1}}), InputError);
}

TEST_CASE("primitive_scaling") {
    CHECK(primitive_scaling(P({"-1/2", "1"}), Prime(2)) == P({"-1", "2"}));
    CHECK(primitive_scaling(P({"3", "1"}), Prime(2)) == P({"3", "1"}));
    CHECK(primitive_scaling(P({"1/8", "1/4", "1"}), Prime(2)) == P({"1", "2", "8"}));
}

TEST_CASE("degree cap turns into a resource error") {
    // Product of two irreducible sextics without rational roots exceeds a tiny cap.
    Poly a = P({"2", "0", "0", "0", "0", "0", "1"});
    Poly b = P({"3", "1", "0", "0", "0", "0", "1"});
    FactorOptions small;
    small.degree_cap = 4;
    CHECK_THROWS_AS(factor_over_Q(a * b, small), ResourceError);
}

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

TEST_CASE("vp on integers and rationals") {
    CHECK(vp(Q("12"), Prime(2)) == ValInt(2));
    CHECK(vp(Q("0"), Prime(7)).is_infinite());
    CHECK(vp(Q("5/8"), Prime(2)) == ValInt(-3));
    CHECK(vp(Q("-54"), Prime(3)) == ValInt(3));
    CHECK(vp(Q("7/9"), Prime(5)) == ValInt(0));
}

TEST_CASE("ValInt arithmetic keeps infinity absorbing") {
    ValInt inf = ValInt::infinity();
    CHECK((inf + ValInt(3)).is_infinite());
    CHECK(ValInt(2) < inf);
    CHECK(scale(0, inf) == ValInt(0));
    CHECK(scale(3, ValInt(-2)) == ValInt(-6));
    CHECK(std::min(inf, ValInt(5)) == ValInt(5));
}

TEST_CASE("primes are validated") {
    CHECK_THROWS_AS(Prime(4), InputError);
    CHECK_THROWS_AS(Prime(1), InputError);
    CHECK(Prime(101).value() == 101);
}

TEST_CASE("parse_rational") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("poly_content") {
    CHECK(poly_content(P({"10", "4", "6"})) == Q("2"));
    CHECK(poly_content(P({"9/4", "3", "3/2"})) == Q("3/4"));
    CHECK(poly_content(P({"-1", "1"})) == Q("1"));
}

TEST_CASE("poly_divrem") {
    auto [q1, r1] = divrem(P({"-1", "0", "1"}), P({"-1", "1"}));
    CHECK(q1 == P({"1", "1"}));
    CHECK(r1.is_zero());
    auto [q2, r2] = divrem(P({"0", "0", "1"}), P({"-1", "1"}));
    CHECK(q2 == P({"1", "1"}));
    CHECK(r2 == P({"1"}));
    auto [q3, r3] = divrem(P({"0", "-1", "1"}), P({"0", "2"}));
    CHECK(q3 == P({"-1/2", "1/2"}));
    CHECK(r3.is_zero());
    CHECK_THROWS(divrem(P({"1"}), Poly{}));
}

TEST_CASE("multiplicity") {
    Poly x = X, x1 = X - C(1);
    CHECK(multiplicity(x * x * x1, x) == 2);
    CHECK(multiplicity(x * x * x1, X + C(1)) == 0);
    Poly q = X * X + C(1);
    CHECK(multiplicity(pow(q, 3) * (X - C(2)), q) == 3);
}

TEST_CASE("poly_eval") {
    CHECK(P({"0", "-1/2", "1/2"})(Q("4")) == Q("6"));
    CHECK(X(Q("0")) == Q("0"));
    CHECK(P({"1/2", "3/2"})(Q("1/3")) == Q("1"));
}

TEST_CASE("prime_factors") {
    CHECK(prime_factors(Integer(360)) == std::vector<Integer>{2, 3, 5});
    CHECK(prime_factors(Integer(1)).empty());
    CHECK(prime_factors(Integer("1000000007")) == std::vector<Integer>{Integer("1000000007")});
}

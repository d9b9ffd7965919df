#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

TEST_CASE("contains") {
    CHECK(SetSpec::integers().contains(Q("5")));
    CHECK(!SetSpec::integers().contains(Q("1/2")));
    CHECK(!SetSpec::residues(4, {1, 3}).contains(Q("6")));
    CHECK(SetSpec::finite({Q("0"), Q("1/3")}).contains(Q("1/3")));
}

TEST_CASE("set construction rejects bad input") {
    CHECK_THROWS_AS(SetSpec::finite({}), InputError);
    CHECK_THROWS_AS(SetSpec::finite({Q("1"), Q("1")}), InputError);
    CHECK_THROWS_AS(SetSpec::residues(0, {0}), InputError);
    CHECK_THROWS_AS(SetSpec::residues(5, {}), InputError);
    CHECK(SetSpec::residues(5, {7, 2, 12}).residues() == std::vector<Integer>{2});
}

TEST_CASE("local scope needs p-integral points") {
    CHECK_THROWS_AS(SetSpec::finite({Q("1/2")}).check_local(Prime(2)), InputError);
    CHECK_NOTHROW(SetSpec::finite({Q("1/2")}).check_local(Prime(3)));
}

TEST_CASE("ball_meets") {
    Prime two(2);
    CHECK(SetSpec::integers().meets(Ball{3, 3}, two));
    CHECK(SetSpec::residues(3, {0}).meets(Ball{1, 1}, two));
    CHECK(!SetSpec::finite({Q("4")}).meets(Ball{1, 1}, two));
    CHECK(SetSpec::finite({Q("1/3")}).meets(Ball{1, 1}, two));
    // Residues mod 4 {0} never meet the odd ball.
    CHECK(!SetSpec::residues(4, {0}).meets(Ball{1, 1}, two));
}

TEST_CASE("pick_representative takes the smallest magnitude, positive on ties") {
    Prime two(2);
    CHECK(SetSpec::integers().pick_representative(Ball{1, 1}, two, {Q("1")}) == Q("-1"));
    CHECK(SetSpec::integers().pick_representative(Ball{0, 2}, two) == Q("0"));
    CHECK(SetSpec::integers().pick_representative(Ball{1, 1}, two) == Q("1"));
    // s = 2 mod 5 and odd: -3 has the smallest magnitude.
    Rational r = SetSpec::residues(5, {2}).pick_representative(Ball{1, 1}, two);
    CHECK(r == Q("-3"));
    for (int s = -3; s <= 3; ++s) {
        if (s % 2 != 0 && ((s % 5) + 5) % 5 == 2) CHECK(abs(Rational(s)) >= abs(r));
    }
    CHECK_THROWS_AS(SetSpec::finite({Q("4")}).pick_representative(Ball{1, 1}, two), EmptyChoiceError);
}

TEST_CASE("is_isolated") {
    CHECK(!SetSpec::integers().is_isolated(Q("0"), Prime(2)));
    CHECK(SetSpec::finite({Q("0"), Q("1"), Q("2")}).is_isolated(Q("1"), Prime(3)));
    CHECK(!SetSpec::residues(4, {1}).is_isolated(Q("1"), Prime(2)));
}

TEST_CASE("relevant children of a ball") {
    Prime three(3);
    auto all = SetSpec::integers().relevant_children(Ball{}, three);
    CHECK(!all.has_value());
    auto some = SetSpec::finite({Q("1"), Q("4")}).relevant_children(Ball{}, three);
    REQUIRE(some.has_value());
    CHECK(*some == std::vector<Integer>{1});
}

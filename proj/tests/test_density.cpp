#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

namespace {

const Prime two(2), three(3);
const SetSpec Z = SetSpec::integers();

std::vector<Poly> x_x1() { return {X, X - C(1)}; }

std::vector<ValVector> sorted(std::vector<ValVector> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("val_vector") {
    CHECK(val_vector(Q("2"), x_x1(), two) == V({1, 0}));
    CHECK(val_vector(Q("0"), x_x1(), two) == V({-1, 0}));
    CHECK(val_vector(Q("1"), {X * X + C(1)}, two) == V({1}));
    CHECK_THROWS_AS(val_vector(Q("1/2"), {X}, two), InputError);
}

TEST_CASE("value_by_roots") {
    CHECK(value_by_roots(F(X * (X - C(1))), Q("6"), two) == ValInt(1));
    CHECK(value_by_roots(F(X * (X - C(1)) * C(Q("1/2"))), Q("2"), two) == ValInt(0));
    CHECK(value_by_roots(F(X), Q("0"), Prime(5)).is_infinite());
    // A root with negative valuation contributes v(a).
    CHECK(value_by_roots(F(X - C(Q("1/4"))), Q("3"), two) == ValInt(-2));
    CHECK_THROWS_AS(value_by_roots(F(X * X + C(1)), Q("1"), two), InputError);
}

TEST_CASE("min_functional") {
    CHECK(min_functional(Z, x_x1(), two, {1, 1}) == ValInt(1));
    CHECK(min_functional(Z, {X}, three, {2}) == ValInt(0));
    CHECK(min_functional(Z, x_x1(), two, {3, 0}) == ValInt(0));
    CHECK_THROWS_AS(min_functional(Z, x_x1(), two, {1}), InputError);
}

TEST_CASE("dense_set on the basic examples") {
    auto d = dense_set(Z, x_x1(), two);
    CHECK(d.points == std::vector<Rational>{Q("-1"), Q("2")});
    CHECK(sorted(d.vectors) == sorted({V({0, 1}), V({1, 0})}));
    CHECK(d.mode == DenseMode::Exact);
    CHECK(d.isolated_roots.empty());

    auto d1 = dense_set(Z, {X}, two);
    CHECK(d1.points == std::vector<Rational>{Q("1")});
    CHECK(d1.vectors == std::vector<ValVector>{V({0})});

    auto d2 = dense_set(Z, {X * X + C(1)}, two);
    CHECK(d2.points == std::vector<Rational>{Q("0")});
    CHECK(d2.vectors == std::vector<ValVector>{V({0})});
    CHECK(d2.mode == DenseMode::Tracked);
}

TEST_CASE("dense_set with dyadic roots and residue classes") {
    auto d = dense_set(Z, {X - C(Q("1/2")), X - C(3)}, three);
    CHECK(d.points.size() <= 2);
    auto oracle = minimal_vectors_oracle(Z, {X - C(Q("1/2")), X - C(3)}, three, Integer(3 * 3 * 3 * 3 * 3 * 3));
    CHECK(sorted(d.minimal_vectors()) == sorted(oracle));

    auto r = dense_set(SetSpec::residues(4, {0}), {X}, two);
    CHECK(r.vectors == std::vector<ValVector>{V({2})});
}

TEST_CASE("finite sets of roots raise the isolated-root notice") {
    auto d = dense_set(SetSpec::finite({Q("0"), Q("1")}), x_x1(), two);
    CHECK(d.points == std::vector<Rational>{Q("0"), Q("1")});
    CHECK(d.isolated_roots == std::vector<Rational>{Q("0"), Q("1")});
    // With enough non-roots around, no root is needed.
    auto e = dense_set(SetSpec::finite({Q("0"), Q("1"), Q("2")}), x_x1(), three);
    CHECK(e.isolated_roots.empty());
}

TEST_CASE("minimal_vectors_oracle") {
    CHECK(sorted(minimal_vectors_oracle(Z, x_x1(), two, Integer(1024))) == sorted({V({1, 0}), V({0, 1})}));
    CHECK(minimal_vectors_oracle(Z, {X}, three, Integer(81)) == std::vector<ValVector>{V({0})});
    CHECK(minimal_vectors_oracle(SetSpec::residues(4, {0}), {X}, two, Integer(1024)) == std::vector<ValVector>{V({2})});
    CHECK_THROWS_AS(minimal_vectors_oracle(Z, {X}, three, Integer(8)), PreconditionError);
}

TEST_CASE("is_dense") {
    CHECK(is_dense({Q("2"), Q("3")}, Z, x_x1(), two).dense);
    auto bad = is_dense({Q("2")}, Z, x_x1(), two);
    CHECK(!bad.dense);
    CHECK(bad.witness == V({0, 1}));
    SetSpec S = SetSpec::finite({Q("0"), Q("3"), Q("5")});
    CHECK(is_dense(S.elements(), S, x_x1(), two).dense);
    CHECK_THROWS_AS(is_dense({Q("1/2")}, Z, x_x1(), two), InputError);
}

TEST_CASE("in_closure") {
    CHECK(in_closure(Q("2"), {Q("1")}, {X}, two).inside);
    auto out = in_closure(Q("1"), {Q("2")}, {X}, two);
    CHECK(!out.inside);
    CHECK(out.separator == std::vector<Integer>{1});
    // (1,1) sits on the segment between (2,0) and (0,2).
    auto hull = in_closure_vector(V({1, 1}), {V({2, 0}), V({0, 2})});
    CHECK(hull.inside);
    CHECK(hull.lambda == std::vector<Rational>{Q("1/2"), Q("1/2")});
    CHECK(!in_closure_vector(V({0, 1}), {V({2, 0}), V({0, 2})}).inside);
}

TEST_CASE("minimize_dense_set") {
    CHECK(minimize_dense_set({Q("2"), Q("3"), Q("4")}, Z, x_x1(), two).points == std::vector<Rational>{Q("2"), Q("3")});
    CHECK(minimize_dense_set({Q("2"), Q("3")}, Z, x_x1(), two).points == std::vector<Rational>{Q("2"), Q("3")});
    CHECK(minimize_dense_set({Q("1")}, Z, {X}, two).points == std::vector<Rational>{Q("1")});
    CHECK_THROWS_AS(minimize_dense_set({Q("2")}, Z, x_x1(), two), PreconditionError);
}

TEST_CASE("dominance test agrees with brute-force rational search") {
    // Small grid: x is inside iff some convex combination of two vectors lies below it.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> u(0, 4);
    for (int i = 0; i < 300; ++i) {
        std::vector<ValVector> ys;
        for (int k = 0; k < 3; ++k) ys.push_back(V({u(rng), u(rng)}));
        ValVector x = V({u(rng), u(rng)});
        bool brute = false;
        for (std::size_t a = 0; a < ys.size() && !brute; ++a) {
            for (std::size_t b = 0; b < ys.size() && !brute; ++b) {
                for (int n = 0; n <= 60 && !brute; ++n) {
                    Rational l(n, 60);
                    l.canonicalize();
                    bool ok = true;
                    for (int j = 0; j < 2; ++j) {
                        Rational v = l * ys[a][j].value() + (1 - l) * ys[b][j].value();
                        if (v > x[j].value()) ok = false;
                    }
                    brute = ok;
                }
            }
        }
        CHECK(dominance_test(x, ys).inside == brute);
    }
}

TEST_CASE("depth bound is honoured") {
    // On odd s, v(s^2 + 7) >= 3 and the minimum only shows below depth 1.
    SetSpec odd = SetSpec::residues(2, {1});
    CHECK_THROWS_AS(dense_set(odd, {X * X + C(7)}, two, DenseOptions{1}), ResourceError);
    auto d = dense_set(odd, {X * X + C(7)}, two);
    CHECK(minimal_elements(d.vectors) == std::vector<ValVector>{V({3})});
}

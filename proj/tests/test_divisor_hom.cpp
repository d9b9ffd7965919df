#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

namespace {

const Prime two(2), three(3);
const SetSpec Z = SetSpec::integers();

FactoredPoly fx() { return F(X * (X - C(1))); }

PhiVector pv(std::vector<std::int64_t> h, std::uint64_t p, std::initializer_list<long> t) { return PhiVector{std::move(h), {{p, V(t)}}}; }

}  // namespace

TEST_CASE("phi_local") {
    MonoidContext ctx(fx(), Z, two);
    CHECK(phi_local(F(X * (X - C(1)) * C(Q("1/2"))), ctx) == pv({1, 1}, 2, {0, 0}));
    CHECK(phi_local(FactoredPoly(Rational(2), {}), ctx) == pv({0, 0}, 2, {1, 1}));
    CHECK(phi_local(FactoredPoly(), ctx) == pv({0, 0}, 2, {0, 0}));
    CHECK_THROWS_AS(phi_local(F(X + C(1)), ctx), DomainError);
}

TEST_CASE("divides_in_M") {
    CHECK(!divides_in_M(pv({1, 0}, 2, {1, 0}), pv({1, 1}, 2, {0, 0})));
    CHECK(divides_in_M(pv({0, 0}, 2, {0, 0}), pv({3, 1}, 2, {2, 5})));
    auto u = pv({1, 2}, 2, {0, 4});
    CHECK(divides_in_M(u, u));
    CHECK_THROWS_AS(divides_in_M(u, PhiVector{{1}, {}}), InputError);
}

TEST_CASE("gcd_in_M") {
    CHECK(gcd_in_M({pv({1, 1}, 2, {0, 0}), pv({1, 0}, 2, {1, 0})}) == pv({1, 0}, 2, {0, 0}));
    auto u = pv({2, 1}, 2, {1, 3});
    CHECK(gcd_in_M({u}) == u);
    CHECK(gcd_in_M({pv({0, 0}, 2, {1, 1}), pv({1, 0}, 2, {1, 0})}) == pv({0, 0}, 2, {1, 0}));
    auto a = pv({3, 1}, 2, {2, 0}), b = pv({1, 2}, 2, {1, 4}), c = pv({2, 2}, 2, {0, 1});
    CHECK(gcd_in_M({a, b}) == gcd_in_M({b, a}));
    CHECK(gcd_in_M({gcd_in_M({a, b}), c}) == gcd_in_M({a, gcd_in_M({b, c})}));
    CHECK(gcd_in_M({a, a}) == a);
    for (const auto& x : {a, b, c}) CHECK(divides_in_M(gcd_in_M({a, b, c}), x));
}

TEST_CASE("build_witnesses for x(x-1) at 2") {
    MonoidContext ctx(fx(), Z, two);
    auto ws = build_witnesses(ctx);
    REQUIRE(ws.points == std::vector<Rational>{Q("-1"), Q("2")});
    REQUIRE(ws.separators.size() == 2);
    CHECK(ws.separators[0].poly.expand() == X);
    CHECK(ws.separators[1].poly.expand() == X - C(1));
    REQUIRE(ws.identities.size() == 4);
    for (const auto& id : ws.identities) {
        CHECK(id.holds);
        CHECK(id.gcd == id.target);
    }
    CHECK(ws.all_realized());
    CHECK(ws.divisor_theory);
    for (const auto& w : ws.mixed) CHECK(ctx.in_monoid(w.poly).member);
}

TEST_CASE("verify_divisor_theory in degenerate cases") {
    MonoidContext c3(fx(), Z, three);
    auto ws = verify_divisor_theory(c3);
    CHECK(ws.all_realized());
    REQUIRE(ws.factor_witnesses.size() == 2);
    CHECK(ws.factor_witnesses[0].phi.h == std::vector<std::int64_t>{1, 0});
    CHECK(ws.factor_witnesses[1].phi.h == std::vector<std::int64_t>{0, 1});

    MonoidContext cp(FactoredPoly(Rational(2), {}), Z, two);
    auto wp = verify_divisor_theory(cp);
    CHECK(wp.all_realized());
    CHECK(phi_local(FactoredPoly(Rational(2), {}), cp).t.at(2) == V({1}));
}

TEST_CASE("critical_primes") {
    auto as_ints = [](const std::vector<Prime>& ps) {
        std::vector<std::uint64_t> v;
        for (auto p : ps) v.push_back(p.value());
        return v;
    };
    CHECK(as_ints(critical_primes(F((X * X + X) * C(Q("1/2"))), Z)) == std::vector<std::uint64_t>{2});
    CHECK(as_ints(critical_primes(F(X * (X - C(1)) * (X - C(2))), Z)) == std::vector<std::uint64_t>{2, 3});
    CHECK(critical_primes(F(X), Z).empty());
}

TEST_CASE("phi_global") {
    FactoredPoly f = F((X * X + X) * C(Q("1/2")));
    GlobalContext g(f, Z);
    REQUIRE(g.primes().size() == 1);
    CHECK(g.locals()[0].dense().points == std::vector<Rational>{Q("1"), Q("2")});
    CHECK(g.phi(f) == pv({1, 1}, 2, {0, 0}));
    CHECK(g.phi(F(X)) == pv({1, 0}, 2, {0, 1}));
    CHECK(!divides_in_M(g.phi(F(X)), g.phi(f)));
    CHECK(!g.in_monoid(F(X)).member);
    CHECK(g.phi(FactoredPoly()) == pv({0, 0}, 2, {0, 0}));
}

TEST_CASE("global membership outside the critical primes") {
    GlobalContext g(F((X * X + X) * C(Q("1/2"))), Z);
    CHECK(g.in_monoid(F(X * (X + C(1)) * C(Q("1/2")))).member);
    CHECK(g.in_monoid(F(X * (X + C(1)) * C(Q("1/6")))).reason == "not integer-valued");
    CHECK(g.in_monoid(F(X * (X + C(1)) * C(Q("3/2")))).reason == "non-primitive");
}

TEST_CASE("verify_divisor_hom") {
    MonoidContext ctx(fx(), Z, two);
    auto rep = verify_divisor_hom(ctx, 200, 7);
    CHECK(rep.pairs == 200);
    CHECK(rep.ok());
    CHECK(rep.both_divide > 0);
    CHECK(rep.neither_divides > 0);
    auto empty = verify_divisor_hom(ctx, 0, 7);
    CHECK(empty.pairs == 0);
    CHECK(empty.ok());
    GlobalContext g(F((X * X + X) * C(Q("1/2"))), Z);
    auto gr = verify_divisor_hom(g, 100, 7);
    CHECK(gr.pairs == 100);
    CHECK(gr.ok());
}

TEST_CASE("phi is a homomorphism and injective up to units on samples") {
    MonoidContext ctx(F(X * (X - C(1)) * (X - C(2))), Z, three);
    auto s = ctx.sample(15, 2, 3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            CHECK(phi_local(s[i] * s[j], ctx) == phi_local(s[i], ctx) + phi_local(s[j], ctx));
            bool same_phi = phi_local(s[i], ctx) == phi_local(s[j], ctx);
            bool associated = ctx.divides_in_monoid(s[i], s[j]).divides && ctx.divides_in_monoid(s[j], s[i]).divides;
            CHECK(same_phi == associated);
        }
    }
}

TEST_CASE("phi refuses dense sets with isolated roots") {
    // Every point of S is a root, so values on T carry no divisibility information.
    MonoidContext ctx(fx(), SetSpec::finite({Q("0"), Q("1")}), two);
    CHECK(!ctx.root_free());
    CHECK_THROWS_AS(phi_local(fx(), ctx), PreconditionError);
    CHECK_THROWS_AS(verify_divisor_hom(ctx, 20, 7), PreconditionError);
    CHECK_THROWS_AS(build_witnesses(ctx), PreconditionError);
    // Membership itself is still decided.
    CHECK(ctx.in_monoid(F(X)).member);
    CHECK(!ctx.in_monoid(F(X * C(Q("1/2")))).member);
}

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

namespace {

const Prime two(2), three(3);
const SetSpec Z = SetSpec::integers();

FactoredPoly fx() { return F(X * (X - C(1))); }

}  // namespace

TEST_CASE("int_valued") {
    MonoidContext ctx(fx(), Z, two);
    CHECK(ctx.int_valued(F(X * (X - C(1)) * C(Q("1/2")))));
    CHECK(!ctx.int_valued(F(X * (X - C(1)) * C(Q("1/4")))));
    MonoidContext c9(F(X), SetSpec::residues(9, {0}), three);
    CHECK(c9.int_valued(F(X * C(Q("1/3")))));
    CHECK(!c9.int_valued(F(X * C(Q("1/27")))));
}

TEST_CASE("image_min against direct value scans") {
    auto scan = [](const FactoredPoly& g, Prime p, int n) {
        ValInt best = ValInt::infinity();
        Poly e = g.expand();
        for (int s = 0; s < n; ++s) best = std::min(best, vp(e(Rational(s)), p));
        return best;
    };
    MonoidContext c2(fx(), Z, two);
    CHECK(c2.image_min(fx()) == ValInt(1));
    CHECK(scan(fx(), two, 64) == ValInt(1));
    CHECK(c2.image_min(F(X)) == ValInt(0));
    FactoredPoly t = F(X * (X - C(1)) * (X - C(2)));
    MonoidContext c3(t, Z, three);
    CHECK(c3.image_min(t) == ValInt(1));
    CHECK(scan(t, three, 81) == ValInt(1));
    CHECK(image_min_oracle(t, Z, three) == ValInt(1));
}

TEST_CASE("is_image_primitive") {
    FactoredPoly b = F((X * X + X) * C(Q("1/2")));
    CHECK(MonoidContext(b, Z, two).is_image_primitive(b));
    CHECK(!MonoidContext(fx(), Z, two).is_image_primitive(fx()));
    CHECK(MonoidContext(fx(), Z, two).is_image_primitive(FactoredPoly()));
}

TEST_CASE("in_monoid at an archimedean prime") {
    MonoidContext ctx(fx(), Z, two);
    auto half = ctx.in_monoid(F(X * (X - C(1)) * C(Q("1/2"))));
    REQUIRE(half.member);
    CHECK(half.certificate->m == 1);
    CHECK(half.certificate->cofactor == FactoredPoly(Rational(2), {}));
    CHECK(half.certificate->kind == CertificateKind::ArchimedeanBound);
    // The exponent 2 with cofactor 2x(x-1) also works.
    auto c2 = divide_exact(pow(fx(), 2), F(X * (X - C(1)) * C(Q("1/2"))));
    REQUIRE(c2);
    CHECK(c2->expand() == X * (X - C(1)) * C(2));
    CHECK(image_min_oracle(*c2, Z, two) >= ValInt(0));

    auto quarter = ctx.in_monoid(F(X * (X - C(1)) * C(Q("1/4"))));
    CHECK(!quarter.member);
    CHECK(quarter.reason == "not integer-valued");
    CHECK(ctx.in_monoid(F(X + C(1))).reason == "foreign factor");
}

TEST_CASE("in_monoid in the image-primitive case") {
    MonoidContext ctx(fx(), Z, three);
    auto r = ctx.in_monoid(F(X * C(3)));
    CHECK(!r.member);
    CHECK(r.reason == "non-primitive");
    auto ok = ctx.in_monoid(F(X * C(Q("2/5"))));
    REQUIRE(ok.member);
    CHECK(ok.certificate->kind == CertificateKind::ImagePrimitive);
}

TEST_CASE("divides_in_monoid") {
    MonoidContext ctx(fx(), Z, two);
    FactoredPoly a = F(X * (X - C(1)) * C(Q("1/2")));
    FactoredPoly b = F(X * X * (X - C(1)) * (X - C(1)) * C(Q("1/2")));
    auto d = ctx.divides_in_monoid(a, b);
    REQUIRE(d.divides);
    CHECK(d.cofactor->expand() == X * (X - C(1)));
    auto n = ctx.divides_in_monoid(F(X), a);
    CHECK(!n.divides);
    CHECK(n.reason == "cofactor not integer-valued");
    auto same = ctx.divides_in_monoid(a, a);
    CHECK(same.divides);
    CHECK(same.cofactor->expand() == C(1));
}

TEST_CASE("scale_into_monoid") {
    MonoidContext ctx(fx(), Z, two);
    CHECK(ctx.scale_into_monoid(fx(), Q("1/2")).expand() == X * (X - C(1)) * C(Q("1/2")));
    CHECK_THROWS_AS(ctx.scale_into_monoid(fx(), Q("1/4")), PreconditionError);
    CHECK(ctx.scale_into_monoid(fx(), Q("1")) == fx());
}

TEST_CASE("sample_monoid") {
    MonoidContext ctx(fx(), Z, two);
    auto s = ctx.sample(5, 2, 1);
    CHECK(s.size() == 5);
    for (const auto& g : s) CHECK(ctx.in_monoid(g).member);
    CHECK(ctx.sample(0, 2, 1).empty());

    MonoidContext cp(FactoredPoly(Rational(2), {}), Z, two);
    for (const auto& g : cp.sample(6, 3, 1)) {
        CHECK(g.is_constant());
        ValInt v = vp(g.content(), two);
        CHECK(v >= ValInt(0));
        CHECK(v <= ValInt(3));
    }
}

TEST_CASE("certificates on random members") {
    MonoidContext ctx(F(X * (X + C(1)) * (X - C(1)) * (X - C(3)) * C(Q("1/2"))), Z, two);
    for (const auto& g : ctx.sample(20, 3, 5)) {
        auto m = ctx.in_monoid(g);
        REQUIRE(m.member);
        CHECK((g * m.certificate->cofactor).expand() == pow(ctx.f(), m.certificate->m).expand());
        CHECK(image_min_oracle(m.certificate->cofactor, Z, two) >= ValInt(0));
        if (m.certificate->analytic_bound) CHECK(*m.certificate->analytic_bound >= m.certificate->m);
    }
}

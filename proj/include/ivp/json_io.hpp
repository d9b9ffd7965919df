#pragma once

// JSON encodings of the library types and of problem files.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ivp/divisor_hom.hpp"

namespace ivp {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

inline json to_json(const Rational& x) { return to_string(x); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    throw InputError("expected a rational (string or integer), got " + j.dump());
}

inline Integer integer_from_json(const json& j) {
    Rational r = rational_from_json(j);
    if (r.get_den() != 1) throw InputError("expected an integer, got " + j.dump());
    return r.get_num();
}

inline json to_json(const ValInt& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

inline json to_json(const ValVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

inline Poly poly_from_json(const json& j) {
    if (!j.is_array()) throw InputError("polynomial must be an array of coefficients, lowest degree first");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(rational_from_json(x));
    return Poly(std::move(c));
}

inline json to_json(const FactoredPoly& f) {
    json fs = json::array();
    for (const auto& x : f.factors()) fs.push_back({{"coeffs", to_json(x.poly)}, {"mult", x.mult}});
    return {{"content", to_json(f.content())}, {"factors", fs}};
}

/// A coefficient array (factored here) or {"content", "factors"} (certified).
inline FactoredPoly factored_from_json(const json& j, const FactorOptions& opt = {}) {
    if (j.is_array()) {
        Poly p = poly_from_json(j);
        if (p.is_zero()) throw InputError("polynomial must be nonzero");
        return factor_over_Q(p, opt);
    }
    if (j.is_object() && j.contains("coeffs") && !j.contains("factors")) return factored_from_json(j.at("coeffs"), opt);
    if (!j.is_object() || !j.contains("factors")) throw InputError("polynomial must be a coefficient array or {content, factors}");
    Rational content = j.contains("content") ? rational_from_json(j.at("content")) : Rational(1);
    std::vector<Factor> fs;
    for (const auto& x : j.at("factors")) {
        if (!x.is_object() || !x.contains("coeffs")) throw InputError("factor entries need \"coeffs\"");
        unsigned mult = x.contains("mult") ? x.at("mult").get<unsigned>() : 1u;
        fs.push_back({poly_from_json(x.at("coeffs")), mult});
    }
    return certify_factored(content, std::move(fs), opt);
}

inline json to_json(const SetSpec& s) {
    switch (s.kind()) {
        case SetSpec::Kind::Integers:
            return {{"set", "integers"}};
        case SetSpec::Kind::Finite: {
            json e = json::array();
            for (const auto& x : s.elements()) e.push_back(to_json(x));
            return {{"set", "finite"}, {"elements", e}};
        }
        case SetSpec::Kind::Residues: {
            json r = json::array();
            for (const auto& x : s.residues()) r.push_back(to_json(Rational(x)));
            return {{"set", "residues"}, {"modulus", to_json(Rational(s.modulus()))}, {"residues", r}};
        }
    }
    return {};
}

inline SetSpec set_from_json(const json& j) {
    if (j.is_string()) return set_from_json(json{{"set", j}});
    if (!j.is_object() || !j.contains("set")) throw InputError("set must be an object with a \"set\" field");
    std::string kind = j.at("set").get<std::string>();
    if (kind == "integers") return SetSpec::integers();
    if (kind == "finite") {
        std::vector<Rational> e;
        for (const auto& x : j.at("elements")) e.push_back(rational_from_json(x));
        return SetSpec::finite(std::move(e));
    }
    if (kind == "residues") {
        std::vector<Integer> r;
        for (const auto& x : j.at("residues")) r.push_back(integer_from_json(x));
        return SetSpec::residues(integer_from_json(j.at("modulus")), r);
    }
    throw InputError("unknown set kind '" + kind + "'");
}

inline json to_json(const Ball& b) { return {{"center", b.center.get_str()}, {"depth", b.depth}}; }

inline json to_json(const DenseSet& d) {
    json pts = json::array(), vecs = json::array(), covers = json::array(), iso = json::array(), hs = json::array();
    for (const auto& h : d.factors) hs.push_back(to_json(h));
    for (const auto& t : d.points) pts.push_back(to_json(t));
    for (const auto& v : d.vectors) vecs.push_back(to_json(v));
    for (const auto& c : d.covers) covers.push_back({{"ball", to_json(c.ball)}, {"point", to_json(c.point)}, {"singleton", c.singleton}});
    for (const auto& r : d.isolated_roots) iso.push_back(to_json(r));
    return {{"prime", d.prime.value()}, {"factors", hs}, {"points", pts}, {"vectors", vecs}, {"mode", to_string(d.mode)},
            {"depth_bound", d.depth_bound}, {"certificates", covers}, {"isolated_roots", iso}};
}

inline json to_json(const PhiVector& v) {
    json t = json::object();
    for (const auto& [p, xs] : v.t) t[std::to_string(p)] = to_json(xs);
    return {{"h", v.h}, {"t", t}};
}

inline json to_json(const DominanceResult& r) {
    json j = {{"inside", r.inside}};
    if (r.inside) {
        json l = json::array();
        for (const auto& x : r.lambda) l.push_back(to_json(x));
        j["multipliers"] = l;
    } else {
        json m = json::array();
        for (const auto& x : r.separator) m.push_back(to_json(Rational(x)));
        j["violating_exponents"] = m;
    }
    return j;
}

inline json to_json(const Membership& m) {
    json j = {{"member", m.member}};
    if (!m.member) j["reason"] = m.reason;
    if (m.certificate) {
        const auto& c = *m.certificate;
        json cj = {{"m", c.m}, {"cofactor", to_json(c.cofactor)}, {"kind", to_string(c.kind)}};
        if (c.analytic_bound) cj["analytic_bound"] = *c.analytic_bound;
        j["certificate"] = cj;
    }
    return j;
}

inline json to_json(const Witness& w) { return {{"label", w.label}, {"poly", to_json(w.poly)}, {"phi", to_json(w.phi)}}; }

inline json to_json(const WitnessSet& ws) {
    auto list = [](const std::vector<Witness>& v) {
        json a = json::array();
        for (const auto& w : v) a.push_back(to_json(w));
        return a;
    };
    json pts = json::array(), ids = json::array();
    for (const auto& t : ws.points) pts.push_back(to_json(t));
    for (const auto& id : ws.identities) {
        ids.push_back({{"basis", id.basis}, {"target", to_json(id.target)}, {"members", id.members}, {"gcd", to_json(id.gcd)}, {"holds", id.holds}});
    }
    return {{"divisor_theory", ws.divisor_theory}, {"points", pts}, {"const_p", to_json(ws.const_p)}, {"factor_witnesses", list(ws.factor_witnesses)},
            {"separators", list(ws.separators)}, {"mixed", list(ws.mixed)}, {"identities", ids}, {"all_realized", ws.all_realized()}};
}

inline json to_json(const VerifyReport& r) {
    json ce = json::array();
    for (const auto& c : r.counterexamples) {
        ce.push_back({{"index", c.index}, {"a", to_json(c.a)}, {"b", to_json(c.b)}, {"phi_divides", c.phi_divides}, {"monoid_divides", c.monoid_divides},
                      {"homomorphism", c.homomorphism}});
    }
    return {{"pairs", r.pairs}, {"equivalences", r.equivalences}, {"both_divide", r.both_divide}, {"neither_divides", r.neither_divides},
            {"homomorphism_failures", r.homomorphism_failures}, {"pool", r.pool}, {"counterexamples", ce}, {"ok", r.ok()}};
}

namespace detail {

/// Rational literals to canonical strings, recursively; other values unchanged.
inline json normalize_numbers(const json& j) {
    if (j.is_number_integer() || j.is_string()) {
        try {
            return to_string(rational_from_json(j));
        } catch (const InputError&) {
            return j;
        }
    }
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto it = out.begin(); it != out.end(); ++it) *it = normalize_numbers(*it);
        return out;
    }
    return j;
}

}  // namespace detail

struct ProblemOptions {
    unsigned depth_bound = 64;
    unsigned witness_bound = 32;
    std::size_t samples = 200;
    std::uint64_t seed = 7;
    std::optional<Integer> oracle_radius;
};

struct ProblemSpec {
    json polynomial;
    json set = {{"set", "integers"}};
    /// Prime, or nullopt for global scope.
    std::optional<std::uint64_t> prime;
    ProblemOptions options;
    std::optional<json> g, a, b;
    std::vector<json> points;
    /// Test points for closure queries.
    std::vector<json> query;
    std::optional<json> factors;
    std::optional<std::string> suite;

    json canonical() const {
        json o = {{"depth_bound", options.depth_bound}, {"witness_bound", options.witness_bound}, {"samples", options.samples}, {"seed", options.seed}};
        if (options.oracle_radius) o["oracle_radius"] = options.oracle_radius->get_str();
        using detail::normalize_numbers;
        json s = set.is_string() ? json{{"set", set}} : set;
        json j = {{"polynomial", normalize_numbers(polynomial)}, {"set", normalize_numbers(s)}, {"scope", prime ? json(*prime) : json("global")}, {"options", o}};
        if (g) j["g"] = normalize_numbers(*g);
        if (a) j["a"] = normalize_numbers(*a);
        if (b) j["b"] = normalize_numbers(*b);
        if (!points.empty()) j["points"] = normalize_numbers(points);
        if (!query.empty()) j["query"] = normalize_numbers(query);
        if (factors) j["factors"] = normalize_numbers(*factors);
        if (suite) j["suite"] = *suite;
        return j;
    }

    /// FNV-1a 64 of the canonical encoding, as 16 hex digits.
    std::string hash() const {
        std::string s = canonical().dump();
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

inline ProblemSpec problem_from_json(const json& j) {
    if (!j.is_object()) throw InputError("problem file must hold a JSON object");
    ProblemSpec ps;
    if (j.contains("polynomial")) ps.polynomial = j.at("polynomial");
    if (j.contains("set")) ps.set = j.at("set");
    if (j.contains("scope")) {
        const auto& s = j.at("scope");
        if (s.is_string() && s.get<std::string>() == "global") {
            ps.prime.reset();
        } else if (s.is_number_unsigned()) {
            ps.prime = s.get<std::uint64_t>();
        } else {
            throw InputError("scope must be a prime or \"global\"");
        }
    }
    if (j.contains("options")) {
        const auto& o = j.at("options");
        if (o.contains("depth_bound")) ps.options.depth_bound = o.at("depth_bound").get<unsigned>();
        if (o.contains("witness_bound")) ps.options.witness_bound = o.at("witness_bound").get<unsigned>();
        if (o.contains("samples")) ps.options.samples = o.at("samples").get<std::size_t>();
        if (o.contains("seed")) ps.options.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("oracle_radius")) ps.options.oracle_radius = integer_from_json(o.at("oracle_radius"));
    }
    if (j.contains("g")) ps.g = j.at("g");
    if (j.contains("a")) ps.a = j.at("a");
    if (j.contains("b")) ps.b = j.at("b");
    if (j.contains("point")) ps.points.push_back(j.at("point"));
    if (j.contains("points")) {
        for (const auto& x : j.at("points")) ps.points.push_back(x);
    }
    if (j.contains("query")) {
        const auto& q = j.at("query");
        if (q.is_array()) {
            for (const auto& x : q) ps.query.push_back(x);
        } else {
            ps.query.push_back(q);
        }
    }
    if (j.contains("factors")) ps.factors = j.at("factors");
    if (j.contains("suite")) ps.suite = j.at("suite").get<std::string>();
    return ps;
}

}  // namespace ivp

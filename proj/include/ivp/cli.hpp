#pragma once

// Subcommand dispatch for the ivp tool: problem description in, JSON report and
// exit code out.

#include <iostream>
#include <map>
#include <new>
#include <string>
#include <vector>

#include "ivp/acceptance.hpp"

namespace ivp {

enum ExitCode : int { kOk = 0, kViolated = 1, kInputError = 2, kResourceLimit = 3 };

struct RunResult {
    json report;
    int exit_code = kOk;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"factor", "dense-set", "closure", "is-dense", "fixed-divisor", "member",
                                               "divides", "phi", "witnesses", "critical-primes", "verify"};
    return c;
}

namespace cli_detail {

struct Loaded {
    FactoredPoly f;
    SetSpec S = SetSpec::integers();
    MonoidOptions mopt;
};

inline Loaded load(const ProblemSpec& ps) {
    if (ps.polynomial.is_null()) throw InputError("no polynomial given");
    Loaded l;
    l.f = factored_from_json(ps.polynomial);
    if (l.f.content() == 0) throw InputError("polynomial must be nonzero");
    l.S = set_from_json(ps.set);
    l.mopt.dense.depth_bound = ps.options.depth_bound;
    return l;
}

inline Prime need_prime(const ProblemSpec& ps, const std::string& command) {
    if (!ps.prime) throw InputError(command + " needs a prime scope");
    return Prime(*ps.prime);
}

inline std::vector<Rational> rationals(const std::vector<json>& xs) {
    std::vector<Rational> out;
    for (const auto& x : xs) out.push_back(rational_from_json(x));
    return out;
}

inline FactoredPoly need_poly(const std::optional<json>& j, const char* name) {
    if (!j) throw InputError(std::string("missing polynomial '") + name + "'");
    return factored_from_json(*j);
}

/// The factor set H: explicit "factors" when given, else the factors of f.
inline std::vector<Poly> factor_set(const ProblemSpec& ps) {
    std::vector<Poly> H;
    if (ps.factors) {
        if (!ps.factors->is_array()) throw InputError("factors must be an array of coefficient arrays");
        for (const auto& j : *ps.factors) {
            Poly h = poly_from_json(j);
            if (h.degree() < 1 || !is_irreducible(h)) throw InputError("factor " + h.to_string() + " is not an irreducible polynomial");
            H.push_back(h.monic());
        }
        std::sort(H.begin(), H.end(), factor_order_less);
        H.erase(std::unique(H.begin(), H.end()), H.end());
    } else {
        auto l = load(ps);
        for (const auto& x : l.f.factors()) H.push_back(x.poly);
    }
    if (H.empty()) throw InputError("the factor set is empty (constant polynomial)");
    return H;
}

inline json points_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline json cmd_factor(const ProblemSpec& ps) {
    auto l = load(ps);
    json j = to_json(l.f);
    j["expanded"] = to_json(l.f.expand());
    j["degree"] = l.f.degree();
    return j;
}

inline json cmd_dense_set(const ProblemSpec& ps) {
    Prime p = need_prime(ps, "dense-set");
    auto H = factor_set(ps);
    SetSpec S = set_from_json(ps.set);
    DenseOptions opt{ps.options.depth_bound};
    DenseSet d = dense_set(S, H, p, opt);
    DenseSet m = minimize_dense_set(d, S, opt);
    json j = to_json(d);
    json mv = json::array();
    for (const auto& v : d.minimal_vectors()) mv.push_back(to_json(v));
    j["minimal_vectors"] = mv;
    j["minimized"] = points_json(m.points);
    if (ps.options.oracle_radius) {
        auto oracle = minimal_vectors_oracle(S, H, p, *ps.options.oracle_radius);
        auto mine = d.minimal_vectors();
        std::sort(oracle.begin(), oracle.end());
        std::sort(mine.begin(), mine.end());
        j["oracle_agrees"] = oracle == mine;
    }
    return j;
}

inline json cmd_closure(const ProblemSpec& ps) {
    Prime p = need_prime(ps, "closure");
    auto H = factor_set(ps);
    auto T = rationals(ps.points);
    auto Q = rationals(ps.query);
    if (T.empty()) throw InputError("closure needs a nonempty point set T (points)");
    if (Q.empty()) throw InputError("closure needs query points (query)");
    json out = json::array();
    for (const auto& s : Q) {
        json j = {{"point", to_json(s)}, {"vector", to_json(val_vector(s, H, p))}};
        j.update(to_json(in_closure(s, T, H, p)));
        out.push_back(j);
    }
    return {{"prime", p.value()}, {"points", points_json(T)}, {"queries", out}};
}

inline json cmd_is_dense(const ProblemSpec& ps) {
    Prime p = need_prime(ps, "is-dense");
    auto H = factor_set(ps);
    SetSpec S = set_from_json(ps.set);
    auto T = rationals(ps.points);
    if (T.empty()) throw InputError("is-dense needs a nonempty point set T (points)");
    auto rep = is_dense(T, S, H, p, DenseOptions{ps.options.depth_bound});
    json j = {{"dense", rep.dense}, {"points", points_json(T)}};
    if (!rep.dense) {
        json sep = json::array();
        for (const auto& x : rep.separator) sep.push_back(to_json(Rational(x)));
        j["uncovered_vector"] = to_json(rep.witness);
        j["violating_exponents"] = sep;
    }
    return j;
}

inline json cmd_fixed_divisor(const ProblemSpec& ps) {
    auto l = load(ps);
    if (ps.prime) {
        MonoidContext ctx(l.f, l.S, Prime(*ps.prime), l.mopt);
        return {{"prime", *ps.prime}, {"valuation", to_json(ctx.fixed_divisor_val())}};
    }
    GlobalContext g(l.f, l.S, l.mopt);
    Rational d(1);
    json vals = json::object();
    for (const auto& ctx : g.locals()) {
        ValInt v = ctx.fixed_divisor_val();
        vals[std::to_string(ctx.prime().value())] = to_json(v);
        if (v.is_infinite()) throw DomainError("f vanishes on S at every point");
        d *= ppow(ctx.prime(), v.value());
    }
    return {{"scope", "global"}, {"value", to_json(d)}, {"valuations", vals}};
}

inline json cmd_member(const ProblemSpec& ps) {
    auto l = load(ps);
    FactoredPoly g = need_poly(ps.g, "g");
    if (ps.prime) return to_json(MonoidContext(l.f, l.S, Prime(*ps.prime), l.mopt).in_monoid(g));
    return to_json(GlobalContext(l.f, l.S, l.mopt).in_monoid(g));
}

inline json divisibility_json(const Divisibility& d) {
    json j = {{"divides", d.divides}};
    if (d.divides && d.cofactor) j["cofactor"] = to_json(*d.cofactor);
    if (!d.divides) j["reason"] = d.reason;
    return j;
}

inline json cmd_divides(const ProblemSpec& ps) {
    auto l = load(ps);
    FactoredPoly a = need_poly(ps.a, "a");
    FactoredPoly b = need_poly(ps.b, "b");
    if (ps.prime) {
        MonoidContext ctx(l.f, l.S, Prime(*ps.prime), l.mopt);
        for (const auto* x : {&a, &b}) {
            auto m = ctx.in_monoid(*x);
            if (!m.member) throw DomainError(x->to_string() + " is not in the monoid (" + m.reason + ")");
        }
        auto d = ctx.divides_in_monoid(a, b);
        json j = divisibility_json(d);
        j["phi_divides"] = divides_in_M(phi_local(a, ctx), phi_local(b, ctx));
        return j;
    }
    GlobalContext ctx(l.f, l.S, l.mopt);
    for (const auto* x : {&a, &b}) {
        auto m = ctx.in_monoid(*x);
        if (!m.member) throw DomainError(x->to_string() + " is not in the monoid (" + m.reason + ")");
    }
    json j = divisibility_json(ctx.divides_in_monoid(a, b));
    j["phi_divides"] = divides_in_M(ctx.phi(a), ctx.phi(b));
    return j;
}

inline json cmd_phi(const ProblemSpec& ps) {
    auto l = load(ps);
    FactoredPoly g = ps.g ? factored_from_json(*ps.g) : l.f;
    if (ps.prime) {
        MonoidContext ctx(l.f, l.S, Prime(*ps.prime), l.mopt);
        return {{"g", to_json(g)}, {"points", points_json(ctx.dense().points)}, {"phi", to_json(phi_local(g, ctx))}};
    }
    GlobalContext ctx(l.f, l.S, l.mopt);
    json pts = json::object();
    for (const auto& c : ctx.locals()) pts[std::to_string(c.prime().value())] = points_json(c.dense().points);
    return {{"g", to_json(g)}, {"points", pts}, {"phi", to_json(ctx.phi(g))}};
}

inline json cmd_witnesses(const ProblemSpec& ps) {
    auto l = load(ps);
    Prime p = need_prime(ps, "witnesses");
    MonoidContext ctx(l.f, l.S, p, l.mopt);
    return to_json(build_witnesses(ctx, ps.options.witness_bound));
}

inline json cmd_critical_primes(const ProblemSpec& ps) {
    auto l = load(ps);
    json a = json::array();
    for (auto q : critical_primes(l.f, l.S, l.mopt)) a.push_back(q.value());
    return {{"critical_primes", a}};
}

inline RunResult cmd_verify(const ProblemSpec& ps) {
    if (ps.suite) {
        if (*ps.suite != "all") throw InputError("unknown suite '" + *ps.suite + "' (expected all)");
        SuiteOptions so;
        so.seed = ps.options.seed;
        auto rs = run_suite(so, [](const CriterionResult& r) { std::cerr << format_line(r) << "\n"; });
        json cs = json::array();
        std::size_t passed = 0;
        for (const auto& r : rs) {
            cs.push_back(to_json(r));
            passed += r.pass ? 1 : 0;
        }
        bool ok = passed == rs.size();
        return {{{"suite", "all"}, {"criteria", cs}, {"passed", passed}, {"total", rs.size()}, {"ok", ok}}, ok ? kOk : kViolated};
    }
    auto l = load(ps);
    VerifyReport rep;
    if (ps.prime) {
        MonoidContext ctx(l.f, l.S, Prime(*ps.prime), l.mopt);
        rep = verify_divisor_hom(ctx, ps.options.samples, ps.options.seed);
    } else {
        GlobalContext ctx(l.f, l.S, l.mopt);
        rep = verify_divisor_hom(ctx, ps.options.samples, ps.options.seed);
    }
    return {to_json(rep), rep.ok() ? kOk : kViolated};
}

inline json envelope(const std::string& command, const ProblemSpec& ps) {
    return {{"tool", "ivp"}, {"version", kToolVersion}, {"spec_hash", ps.hash()}, {"command", command}};
}

}  // namespace cli_detail

inline json error_report(const std::string& command, const std::string& hash, const char* kind, const std::string& message) {
    json j = {{"tool", "ivp"}, {"version", kToolVersion}};
    if (!hash.empty()) j["spec_hash"] = hash;
    j["command"] = command;
    j["error"] = {{"kind", kind}, {"message", message}};
    return j;
}

/// Runs one subcommand. Errors become an error report and the matching exit code.
inline RunResult run(const std::string& command, const ProblemSpec& ps) {
    using namespace cli_detail;
    std::string hash = ps.hash();
    auto fail = [&](int code, const char* kind, const std::string& msg) {
        std::cerr << "ivp " << command << ": " << msg << "\n";
        return RunResult{error_report(command, hash, kind, msg), code};
    };
    try {
        RunResult out;
        if (command == "verify") {
            out = cmd_verify(ps);
        } else if (command == "factor") {
            out.report = cmd_factor(ps);
        } else if (command == "dense-set") {
            out.report = cmd_dense_set(ps);
        } else if (command == "closure") {
            out.report = cmd_closure(ps);
        } else if (command == "is-dense") {
            out.report = cmd_is_dense(ps);
        } else if (command == "fixed-divisor") {
            out.report = cmd_fixed_divisor(ps);
        } else if (command == "member") {
            out.report = cmd_member(ps);
        } else if (command == "divides") {
            out.report = cmd_divides(ps);
        } else if (command == "phi") {
            out.report = cmd_phi(ps);
        } else if (command == "witnesses") {
            out.report = cmd_witnesses(ps);
        } else if (command == "critical-primes") {
            out.report = cmd_critical_primes(ps);
        } else {
            throw InputError("unknown command '" + command + "'");
        }
        json env = envelope(command, ps);
        env["result"] = std::move(out.report);
        return {std::move(env), out.exit_code};
    } catch (const InputError& e) {
        return fail(kInputError, "input", e.what());
    } catch (const json::exception& e) {
        return fail(kInputError, "input", e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kInputError, "input", e.what());
    } catch (const ResourceError& e) {
        return fail(kResourceLimit, "resource", e.what());
    } catch (const std::bad_alloc&) {
        return fail(kResourceLimit, "resource", "out of memory");
    } catch (const VerificationError& e) {
        return fail(kViolated, "verification", e.what());
    } catch (const std::logic_error& e) {
        return fail(kViolated, "internal", e.what());
    }
}

}  // namespace ivp

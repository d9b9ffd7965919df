// ivp: command-line front end. Reads an optional JSON problem file, applies
// flag overrides and prints one JSON report on stdout.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ivp/cli.hpp"

namespace {

struct Flags {
    std::string problem;
    std::string poly, set, scope, g, a, b, factors, suite;
    std::vector<std::string> points, query;
    std::optional<std::uint64_t> prime;
    std::optional<unsigned> depth_bound, witness_bound;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> oracle_radius;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

ivp::json coeffs(const std::string& s) {
    ivp::json a = ivp::json::array();
    for (const auto& c : split(s, ',')) a.push_back(c);
    return a;
}

ivp::json set_flag(const std::string& s) {
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    if (kind == "integers") return {{"set", "integers"}};
    if (colon == std::string::npos) throw ivp::InputError("set must be integers, finite:a,b,.. or residues:M:r,..");
    std::string rest = s.substr(colon + 1);
    if (kind == "finite") return {{"set", "finite"}, {"elements", coeffs(rest)}};
    if (kind == "residues") {
        auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw ivp::InputError("residues set needs residues:M:r1,r2,..");
        return {{"set", "residues"}, {"modulus", rest.substr(0, c2)}, {"residues", coeffs(rest.substr(c2 + 1))}};
    }
    throw ivp::InputError("unknown set kind '" + kind + "'");
}

ivp::ProblemSpec build_spec(const Flags& fl) {
    ivp::ProblemSpec ps;
    if (!fl.problem.empty()) {
        std::ifstream in(fl.problem);
        if (!in) throw ivp::InputError("cannot open problem file " + fl.problem);
        ps = ivp::problem_from_json(ivp::json::parse(in));
    }
    if (!fl.poly.empty()) ps.polynomial = coeffs(fl.poly);
    if (!fl.set.empty()) ps.set = set_flag(fl.set);
    if (!fl.scope.empty()) {
        if (fl.scope == "global") {
            ps.prime.reset();
        } else {
            try {
                ps.prime = std::stoull(fl.scope);
            } catch (const std::exception&) {
                throw ivp::InputError("scope must be a prime or global");
            }
        }
    }
    if (fl.prime) ps.prime = *fl.prime;
    if (!fl.g.empty()) ps.g = coeffs(fl.g);
    if (!fl.a.empty()) ps.a = coeffs(fl.a);
    if (!fl.b.empty()) ps.b = coeffs(fl.b);
    if (!fl.factors.empty()) {
        ivp::json fs = ivp::json::array();
        for (const auto& f : split(fl.factors, ';')) fs.push_back(coeffs(f));
        ps.factors = fs;
    }
    if (!fl.points.empty()) {
        ps.points.clear();
        for (const auto& p : fl.points) {
            for (const auto& x : split(p, ',')) ps.points.emplace_back(x);
        }
    }
    if (!fl.query.empty()) {
        ps.query.clear();
        for (const auto& p : fl.query) {
            for (const auto& x : split(p, ',')) ps.query.emplace_back(x);
        }
    }
    if (!fl.suite.empty()) ps.suite = fl.suite;
    if (fl.depth_bound) ps.options.depth_bound = *fl.depth_bound;
    if (fl.witness_bound) ps.options.witness_bound = *fl.witness_bound;
    if (fl.samples) ps.options.samples = *fl.samples;
    if (fl.seed) ps.options.seed = *fl.seed;
    if (fl.oracle_radius) ps.options.oracle_radius = ivp::integer_from_json(*fl.oracle_radius);
    if (ps.prime && !ivp::is_prime(ivp::Integer(std::to_string(*ps.prime)))) throw ivp::InputError(std::to_string(*ps.prime) + " is not prime");
    return ps;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integer-valued polynomial monoids: dense sets, membership and divisor homomorphisms"};
    app.set_version_flag("--version", ivp::kToolVersion);
    app.require_subcommand(1);
    Flags fl;
    std::string chosen;

    for (const auto& name : ivp::commands()) {
        auto* sc = app.add_subcommand(name);
        sc->add_option("--problem", fl.problem, "JSON problem file");
        sc->add_option("--poly", fl.poly, "coefficients of f, lowest degree first (e.g. 0,-1,1)");
        sc->add_option("--set", fl.set, "integers | finite:a,b,.. | residues:M:r1,r2,..");
        sc->add_option("--prime,-p", fl.prime, "local prime");
        sc->add_option("--scope", fl.scope, "prime or global");
        sc->add_option("--g", fl.g, "polynomial g (member, phi)");
        sc->add_option("--a", fl.a, "divisor a (divides)");
        sc->add_option("--b", fl.b, "dividend b (divides)");
        sc->add_option("--factors", fl.factors, "explicit factor set, ';'-separated coefficient lists");
        sc->add_option("--points", fl.points, "point set T (comma-separated)");
        sc->add_option("--query", fl.query, "test points for closure");
        sc->add_option("--samples", fl.samples, "number of sampled pairs");
        sc->add_option("--seed", fl.seed, "random seed");
        sc->add_option("--depth-bound", fl.depth_bound, "ball-tree depth bound");
        sc->add_option("--witness-bound", fl.witness_bound, "separator search bound");
        sc->add_option("--oracle-radius", fl.oracle_radius, "brute-force radius");
        if (name == "verify") sc->add_option("--suite", fl.suite, "run a named suite (all)");
        sc->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ivp::kInputError;
    }

    ivp::ProblemSpec ps;
    try {
        ps = build_spec(fl);
    } catch (const std::exception& e) {
        std::cerr << "ivp " << chosen << ": " << e.what() << "\n";
        std::cout << ivp::error_report(chosen, "", "input", e.what()).dump(2) << "\n";
        return ivp::kInputError;
    }
    auto res = ivp::run(chosen, ps);
    std::cout << res.report.dump(2) << "\n";
    return res.exit_code;
}

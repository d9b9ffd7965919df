#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <memory>
#include <sys/wait.h>

#include "ivp/cli.hpp"
#include "support.hpp"

using namespace ivp;
using namespace ivp::testing;

namespace {

ProblemSpec problem(const char* text) { return problem_from_json(json::parse(text)); }

struct Shell {
    int code;
    std::string out;
};

Shell shell(const std::string& args) {
    std::string cmd = std::string(IVP_TOOL) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
    int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("json encodings") {
    CHECK(to_json(Q("-3/4")) == "-3/4");
    CHECK(to_json(ValInt::infinity()) == "inf");
    CHECK(to_json(F(X * (X - C(1)) * C(Q("1/2")))).dump() ==
          R"({"content":"1/2","factors":[{"coeffs":["0","1"],"mult":1},{"coeffs":["-1","1"],"mult":1}]})");
    CHECK(to_json(PhiVector{{1, 0}, {{2, V({0, 1})}, {3, V({2})}}}).dump() == R"({"h":[1,0],"t":{"2":[0,1],"3":[2]}})");
}

TEST_CASE("problem files round trip") {
    auto fp = factored_from_json(json::parse(R"({"content":"1/2","factors":[{"coeffs":[0,1]},{"coeffs":["1","1"]}]})"));
    CHECK(fp.expand() == P({"0", "1/2", "1/2"}));
    CHECK_THROWS_AS(factored_from_json(json::parse(R"({"factors":[{"coeffs":[-1,0,1]}]})")), InputError);
    CHECK(set_from_json(json::parse(R"({"set":"residues","modulus":12,"residues":[0,5]})")).describe() == SetSpec::residues(12, {0, 5}).describe());
    CHECK_THROWS_AS(set_from_json(json::parse(R"({"set":"reals"})")), InputError);
    auto a = problem(R"({"polynomial":["0","-1","1"],"scope":2})");
    auto b = problem(R"({"scope":2,"polynomial":["0","-1","1"],"set":"integers"})");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    auto c = problem(R"({"polynomial":["0","-1","1"],"scope":3})");
    CHECK(a.hash() != c.hash());
}

TEST_CASE("run: documented examples") {
    auto v = run("verify", problem(R"({"polynomial":["0","-1","1"],"scope":2,"options":{"samples":200,"seed":7}})"));
    CHECK(v.exit_code == 0);
    CHECK(v.report["result"]["pairs"] == 200);
    CHECK(v.report["result"]["equivalences"] == 200);
    CHECK(v.report["version"] == "0.1.0");
    CHECK(v.report.contains("spec_hash"));

    auto d = run("dense-set", problem(R"({"polynomial":["0","-1","1"],"scope":2})"));
    CHECK(d.exit_code == 0);
    CHECK(d.report["result"]["points"] == json::array({"-1", "2"}));

    auto m = run("member", problem(R"({"polynomial":["0","-1","1"],"scope":2,"g":["0","-1/4","1/4"]})"));
    CHECK(m.exit_code == 0);
    CHECK(m.report["result"]["member"] == false);
    CHECK(m.report["result"]["reason"] == "not integer-valued");
}

TEST_CASE("run: every command produces a report") {
    const char* base = R"({"polynomial":["0","-1","1"],"scope":2,"g":["0","-1/2","1/2"],"a":["0","-1/2","1/2"],"b":["0","0","1/2","-1","1/2"],"points":["2","3"],"query":["1","4"]})";
    for (const auto& c : commands()) {
        if (c == "verify") continue;
        auto r = run(c, problem(base));
        INFO(c << ": " << r.report.dump());
        CHECK(r.exit_code == 0);
        CHECK(r.report["command"] == c);
    }
    auto g = run("critical-primes", problem(R"({"polynomial":["0","2","-3","1"],"scope":"global"})"));
    CHECK(g.report["result"]["critical_primes"] == json::array({2, 3}));
    auto fd = run("fixed-divisor", problem(R"({"polynomial":["0","2","-3","1"],"scope":"global"})"));
    CHECK(fd.report["result"]["value"] == "6");
    auto dv = run("divides", problem(base));
    CHECK(dv.report["result"]["divides"] == true);
    CHECK(dv.report["result"]["phi_divides"] == true);
}

TEST_CASE("run: error exit codes") {
    CHECK(run("dense-set", problem(R"({"polynomial":["0","1"],"scope":"global"})")).exit_code == 2);
    CHECK(run("factor", problem(R"({"polynomial":["0"]})")).exit_code == 2);
    CHECK(run("member", problem(R"({"polynomial":["0","1"],"scope":2})")).exit_code == 2);
    CHECK(run("dense-set", problem(R"({"polynomial":["0","1"],"scope":2,"set":{"set":"finite","elements":["1/2"]}})")).exit_code == 2);
    CHECK(run("dense-set", problem(R"({"polynomial":["7","0","1"],"scope":2,"set":{"set":"residues","modulus":2,"residues":[1]},"options":{"depth_bound":1}})")).exit_code == 3);
    CHECK(run("nonsense", problem(R"({"polynomial":["0","1"]})")).exit_code == 2);
}

TEST_CASE("run: output is deterministic") {
    auto s = problem(R"({"polynomial":["0","2","-3","1"],"scope":"global","options":{"samples":60,"seed":3}})");
    CHECK(run("verify", s).report.dump() == run("verify", s).report.dump());
    CHECK(run("phi", s).report.dump() == run("phi", s).report.dump());
}

TEST_CASE("tool binary: flags, files and exit codes") {
    auto ok = shell("verify --poly 0,-1,1 --prime 2 --samples 200 --seed 7");
    CHECK(ok.code == 0);
    auto j = json::parse(ok.out);
    CHECK(j["result"]["equivalences"] == 200);
    CHECK(shell("verify --poly 0,-1,1 --prime 2 --samples 200 --seed 7").out == ok.out);

    CHECK(shell("member --poly 0,-1,1 --prime 2 --g 0,-1/4,1/4").code == 0);
    CHECK(shell("dense-set --poly 0,-1,1 --prime 4").code == 2);
    CHECK(shell("dense-set --poly 0,-1,1 --prime 2 --set residues:12:0,5").code == 0);
    CHECK(shell("closure --factors '0,1;-1,1' --prime 2 --points 2,3 --query 1").code == 0);
    CHECK(shell("factor --poly 1,x").code == 2);
    CHECK(shell("factor --bogus").code == 2);
    CHECK(shell("dense-set --poly 7,0,1 --prime 2 --set residues:2:1 --depth-bound 1").code == 3);
    CHECK(shell("--version").code == 0);

    auto file = shell(std::string("witnesses --problem ") + IVP_DATA "/problems/binomial_2.json");
    CHECK(file.code == 0);
    CHECK(json::parse(file.out)["result"]["all_realized"] == true);
    auto roots = shell(std::string("verify --problem ") + IVP_DATA "/problems/finite_roots.json");
    CHECK(roots.code == 2);
    CHECK(json::parse(roots.out)["error"]["kind"] == "input");
    auto iso = json::parse(shell(std::string("dense-set --problem ") + IVP_DATA "/problems/finite_roots.json").out);
    CHECK(iso["result"]["isolated_roots"] == json::array({"0", "1"}));
    auto over = shell(std::string("dense-set --problem ") + IVP_DATA "/problems/binomial_2.json --prime 3");
    CHECK(json::parse(over.out)["result"]["prime"] == 3);
}

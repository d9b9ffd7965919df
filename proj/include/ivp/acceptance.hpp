#pragma once

// Property suite with brute-force oracles. Shared by the acceptance binary
// and `ivp verify --suite all`.

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ivp/json_io.hpp"

namespace ivp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string detail;
    double seconds = 0;
};

inline json to_json(const CriterionResult& r) {
    return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"cases", r.cases}, {"failures", r.failures}, {"detail", r.detail}};
}

struct SuiteOptions {
    std::uint64_t seed = 7;
    /// Exponent of the brute-force radius p^k for the dense-set criteria.
    unsigned radius_exponent = 10;
    std::size_t functionals = 100;
};

namespace suite {

inline Poly linear(const Rational& root) { return Poly({-root, Rational(1)}); }

inline FactoredPoly from_roots(const Rational& content, const std::vector<std::pair<Rational, unsigned>>& roots) {
    Poly f({content});
    for (const auto& [r, m] : roots) f = f * pow(linear(r), m);
    return factor_over_Q(f);
}

inline Rational frac(std::int64_t n, std::int64_t d) {
    Rational r{Integer(n), Integer(d)};
    r.canonicalize();
    return r;
}

inline Poly x_poly() { return Poly({Rational(0), Rational(1)}); }

/// Roots in [-20, 20], a quarter of them half-integers, multiplicity <= 2, degree <= 6.
inline std::vector<FactoredPoly> criterion1_polys(std::uint64_t seed, std::size_t count = 25) {
    std::mt19937_64 rng(seed);
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::vector<Rational> contents = {Rational(1), Rational(1, 2), Rational(2), Rational(3), Rational(1, 6), Rational(-1), Rational(5, 4)};
    std::vector<FactoredPoly> out;
    while (out.size() < count) {
        std::size_t distinct = static_cast<std::size_t>(uni(1, 4));
        std::vector<std::pair<Rational, unsigned>> roots;
        unsigned deg = 0;
        for (std::size_t i = 0; i < distinct && deg < 6; ++i) {
            Rational r = uni(0, 3) == 0 ? frac(2 * uni(-20, 19) + 1, 2) : Rational(uni(-20, 20));
            if (std::any_of(roots.begin(), roots.end(), [&](const auto& q) { return q.first == r; })) continue;
            unsigned m = std::min<unsigned>(static_cast<unsigned>(uni(1, 2)), 6 - deg);
            roots.emplace_back(r, m);
            deg += m;
        }
        out.push_back(from_roots(contents[static_cast<std::size_t>(uni(0, 6))], roots));
    }
    return out;
}

inline std::vector<SetSpec> criterion1_sets() {
    return {SetSpec::integers(), SetSpec::residues(12, {0, 5}), SetSpec::residues(20, {3, 10, 17})};
}

inline std::vector<Poly> factor_polys(const FactoredPoly& f) {
    std::vector<Poly> H;
    for (const auto& x : f.factors()) H.push_back(x.poly);
    return H;
}

inline std::vector<ValVector> sorted(std::vector<ValVector> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Checks the certificate attached to a dominance answer.
inline bool certificate_ok(const ValVector& x, const std::vector<ValVector>& ys, const DominanceResult& r) {
    if (r.inside) {
        if (r.lambda.size() != ys.size()) return false;
        Rational total(0);
        for (const auto& l : r.lambda) {
            if (l < 0) return false;
            total += l;
        }
        if (total != 1) return false;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x[j].is_infinite()) continue;
            Rational s(0);
            for (std::size_t i = 0; i < ys.size(); ++i) {
                if (r.lambda[i] == 0) continue;
                if (ys[i][j].is_infinite()) return false;
                s += r.lambda[i] * Rational(ys[i][j].value());
            }
            if (s > Rational(x[j].value())) return false;
        }
        return true;
    }
    std::vector<unsigned> m;
    for (const auto& c : r.separator) {
        if (c < 0 || !c.fits_uint_p()) return false;
        m.push_back(static_cast<unsigned>(c.get_ui()));
    }
    if (m.size() != x.size()) return false;
    ValInt mx = functional_value(m, x);
    return std::all_of(ys.begin(), ys.end(), [&](const ValVector& y) { return functional_value(m, y) > mx; });
}

struct DenseInstance {
    std::size_t poly_index = 0;
    std::size_t set_index = 0;
    FactoredPoly f;
    SetSpec S = SetSpec::integers();
    Prime p{2};
    DenseSet dense;
    std::vector<ValVector> oracle;
};

/// The criterion 1 instances with their dense sets and brute-force minimal vectors.
class InstanceBank {
public:
    explicit InstanceBank(const SuiteOptions& opt) : opt_(opt) {}

    const std::vector<FactoredPoly>& polys() {
        if (polys_.empty()) polys_ = criterion1_polys(opt_.seed);
        return polys_;
    }

    const std::vector<DenseInstance>& instances() {
        if (!built_) {
            const auto& fs = polys();
            auto sets = criterion1_sets();
            for (std::size_t i = 0; i < fs.size(); ++i) {
                auto H = factor_polys(fs[i]);
                for (std::size_t k = 0; k < sets.size(); ++k) {
                    for (std::uint64_t q : {2u, 3u, 5u}) {
                        Prime p(q);
                        DenseInstance in{i, k, fs[i], sets[k], p, dense_set(sets[k], H, p), {}};
                        in.oracle = minimal_vectors_oracle(sets[k], H, p, pow(p, opt_.radius_exponent));
                        inst_.push_back(std::move(in));
                    }
                }
            }
            built_ = true;
        }
        return inst_;
    }

private:
    SuiteOptions opt_;
    std::vector<FactoredPoly> polys_;
    std::vector<DenseInstance> inst_;
    bool built_ = false;
};

inline std::string describe(const DenseInstance& in) {
    return "f = " + in.f.to_string() + ", p = " + std::to_string(in.p.value()) + ", S = " + in.S.describe();
}

inline void fail(CriterionResult& r, const std::string& what) {
    ++r.failures;
    if (r.detail.empty()) r.detail = what;
}

}  // namespace suite

inline CriterionResult criterion_dense_correct(suite::InstanceBank& bank, const SuiteOptions& opt) {
    CriterionResult r{1, "dense set correctness"};
    std::mt19937_64 rng(opt.seed + 1);
    for (const auto& in : bank.instances()) {
        ++r.cases;
        if (!density_against(in.oracle, in.dense.vectors).dense) {
            suite::fail(r, "T misses a brute-force minimal vector: " + suite::describe(in));
            continue;
        }
        if (!is_dense(in.dense.points, in.S, in.dense.factors, in.p).dense) {
            suite::fail(r, "is_dense rejects T: " + suite::describe(in));
            continue;
        }
        std::uniform_int_distribution<unsigned> e(0, 5);
        for (std::size_t k = 0; k < opt.functionals; ++k) {
            std::vector<unsigned> m(in.dense.factors.size());
            for (auto& x : m) x = e(rng);
            ValInt brute = ValInt::infinity();
            for (const auto& v : in.oracle) brute = std::min(brute, functional_value(m, v));
            if (in.dense.min_functional(m) != brute) {
                suite::fail(r, "functional minimum differs from brute force: " + suite::describe(in));
                break;
            }
        }
    }
    r.pass = r.failures == 0 && r.cases > 0;
    if (r.pass) r.detail = std::to_string(r.cases) + " instances, " + std::to_string(opt.functionals) + " functionals each";
    return r;
}

inline CriterionResult criterion_cardinality(suite::InstanceBank& bank) {
    CriterionResult r{2, "cardinality bound |T| <= max(1, |A|)"};
    std::size_t exact = 0;
    for (const auto& in : bank.instances()) {
        ++r.cases;
        if (in.dense.mode != DenseMode::Exact) continue;
        ++exact;
        std::size_t roots = in.dense.factors.size();
        if (in.dense.points.size() > std::max<std::size_t>(1, roots)) suite::fail(r, "|T| = " + std::to_string(in.dense.points.size()) + ": " + suite::describe(in));
    }
    r.pass = r.failures == 0 && exact == r.cases && r.cases > 0;
    if (exact != r.cases && r.detail.empty()) r.detail = "some instances not in exact mode";
    if (r.pass) r.detail = std::to_string(exact) + " exact-mode instances";
    return r;
}

inline CriterionResult criterion_root_free(suite::InstanceBank& bank, const SuiteOptions& opt) {
    CriterionResult r{3, "root-freeness and isolated-root notice"};
    for (const auto& in : bank.instances()) {
        ++r.cases;
        bool clean = in.dense.isolated_roots.empty();
        for (const auto& t : in.dense.points) {
            for (const auto& h : in.dense.factors) {
                if (h(t) == 0) clean = false;
            }
        }
        if (!clean) suite::fail(r, "root in T: " + suite::describe(in));
    }

    // Finite S: only roots (a root must be taken), and roots plus other points.
    std::mt19937_64 rng(opt.seed + 3);
    std::size_t fired = 0, only_roots = 0, mixed = 0;
    for (const auto& f : bank.polys()) {
        auto H = suite::factor_polys(f);
        for (std::uint64_t q : {2u, 3u, 5u}) {
            Prime p(q);
            std::vector<Rational> roots;
            for (const auto& h : H) {
                Rational a = -h.coeff(0);
                if (vp(a, p) >= ValInt(0)) roots.push_back(a);
            }
            if (roots.empty()) continue;
            auto is_root = [&](const Rational& t) { return std::find(roots.begin(), roots.end(), t) != roots.end(); };
            auto flagged = [&](const DenseSet& d) {
                std::vector<Rational> want;
                for (const auto& t : d.points) {
                    if (is_root(t)) want.push_back(t);
                }
                auto got = d.isolated_roots;
                std::sort(want.begin(), want.end());
                std::sort(got.begin(), got.end());
                return want == got;
            };

            ++r.cases;
            ++only_roots;
            SetSpec S1 = SetSpec::finite(roots);
            DenseSet d1 = dense_set(S1, H, p);
            if (!d1.isolated_roots.empty()) ++fired;
            if (d1.isolated_roots.empty() || !flagged(d1)) suite::fail(r, "notice missing for S = " + S1.describe() + ", f = " + f.to_string());

            std::vector<Rational> pts = roots;
            std::uniform_int_distribution<std::int64_t> u(-30, 30);
            while (pts.size() < roots.size() + 3) {
                Rational s(u(rng));
                if (std::find(pts.begin(), pts.end(), s) == pts.end()) pts.push_back(s);
            }
            ++r.cases;
            ++mixed;
            SetSpec S2 = SetSpec::finite(pts);
            DenseSet d2 = dense_set(S2, H, p);
            auto oracle = minimal_vectors_oracle(S2, H, p, Integer(1000));
            if (!flagged(d2) || !density_against(oracle, d2.vectors).dense) suite::fail(r, "notice inconsistent for S = " + S2.describe() + ", f = " + f.to_string());
        }
    }
    r.pass = r.failures == 0 && only_roots > 0 && fired == only_roots;
    if (r.pass) {
        r.detail = "no roots in T over Z and residue sets; notice fired on " + std::to_string(fired) + "/" + std::to_string(only_roots) +
                   " finite root sets, consistent on " + std::to_string(mixed) + " mixed finite sets";
    }
    return r;
}

inline CriterionResult criterion_oracle_equivalence(suite::InstanceBank& bank) {
    CriterionResult r{4, "minimal vectors equal the brute-force oracle"};
    for (const auto& in : bank.instances()) {
        ++r.cases;
        if (suite::sorted(in.dense.minimal_vectors()) != suite::sorted(in.oracle)) suite::fail(r, "minimal vectors differ: " + suite::describe(in));
    }
    r.pass = r.failures == 0 && r.cases > 0;
    if (r.pass) r.detail = std::to_string(r.cases) + " instances";
    return r;
}

inline CriterionResult criterion_divisor_hom(const SuiteOptions& opt) {
    CriterionResult r{5, "divisor homomorphism equivalence"};
    Poly x = suite::x_poly();
    std::vector<Poly> fs = {x * (x - Poly({Rational(1)})), x * (x - Poly({Rational(1)})) * (x - Poly({Rational(2)})),
                            (x * x + x) * Poly({Rational(1, 2)}) * (x - Poly({Rational(3)}))};
    double slowest = 0;
    for (const auto& fp : fs) {
        auto t0 = std::chrono::steady_clock::now();
        FactoredPoly f = factor_over_Q(fp);
        for (std::uint64_t q : {2u, 3u}) {
            MonoidContext ctx(f, SetSpec::integers(), Prime(q));
            auto rep = verify_divisor_hom(ctx, 200, opt.seed);
            r.cases += rep.pairs;
            if (rep.pairs != 200 || !rep.ok()) {
                r.failures += rep.pairs - rep.equivalences + rep.homomorphism_failures + (rep.pairs != 200 ? 1 : 0);
                if (r.detail.empty()) r.detail = "counterexample for f = " + f.to_string() + " at p = " + std::to_string(q);
            }
        }
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    if (slowest >= 60) suite::fail(r, "runtime per polynomial above 60 s");
    r.pass = r.failures == 0;
    if (r.pass) r.detail = std::to_string(r.cases) + " pairs, 0 counterexamples";
    return r;
}

inline CriterionResult criterion_witnesses() {
    CriterionResult r{6, "divisor theory witnesses for x(x-1) at 2"};
    Poly x = suite::x_poly();
    FactoredPoly f = factor_over_Q(x * (x - Poly({Rational(1)})));
    Prime p(2);
    ValInt brute = ValInt::infinity();
    for (int s = 0; s < 4; ++s) brute = std::min(brute, vp(f.expand()(Rational(s)), p));
    MonoidContext ctx(f, SetSpec::integers(), p);
    r.cases = 1;
    if (brute != ValInt(1) || ctx.fixed_divisor_val() != ValInt(1)) suite::fail(r, "fixed divisor valuation is not 1");
    auto ws = build_witnesses(ctx);
    if (ws.points.size() != 2) suite::fail(r, "minimal T has size " + std::to_string(ws.points.size()));
    std::size_t held = 0;
    for (const auto& id : ws.identities) held += id.holds ? 1 : 0;
    if (ws.identities.size() != 4 || held != 4 || !ws.all_realized()) suite::fail(r, std::to_string(held) + " of 4 basis vectors realized");
    r.cases = ws.identities.size();
    r.pass = r.failures == 0;
    if (r.pass) r.detail = "T = {" + to_string(ws.points[0]) + ", " + to_string(ws.points[1]) + "}, 4/4 basis vectors realized";
    return r;
}

inline CriterionResult criterion_monoid_equality(const SuiteOptions& opt) {
    CriterionResult r{7, "monoid equals support and integrality"};
    Poly x = suite::x_poly();
    Poly x1 = x - Poly({Rational(1)});
    FactoredPoly f = factor_over_Q(x * x1);
    Prime p(2);
    SetSpec S = SetSpec::integers();
    MonoidContext ctx(f, S, p);
    std::vector<Poly> foreign = {x + Poly({Rational(1)}), x * x + Poly({Rational(1)})};
    std::mt19937_64 rng(opt.seed + 7);
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    std::size_t accepted = 0, rejected = 0;
    for (int i = 0; i < 200; ++i) {
        std::vector<Factor> fs;
        unsigned e0 = static_cast<unsigned>(uni(0, 3)), e1 = static_cast<unsigned>(uni(0, 3));
        if (e0) fs.push_back({x, e0});
        if (e1) fs.push_back({x1, e1});
        bool support = true;
        if (i % 10 == 9) {
            fs.push_back({foreign[static_cast<std::size_t>(uni(0, 1))], 1});
            support = false;
        }
        Rational c = ppow(p, uni(-4, 2)) * (uni(0, 1) ? Rational(1) : Rational(-3));
        FactoredPoly g(c, fs);
        bool expected = support && image_min_oracle(g, S, p) >= ValInt(0);
        auto mem = ctx.in_monoid(g);
        ++r.cases;
        if (mem.member != expected) {
            suite::fail(r, "membership of " + g.to_string() + " is " + (mem.member ? "true" : "false"));
            continue;
        }
        if (!mem.member) {
            ++rejected;
            continue;
        }
        ++accepted;
        const auto& cert = *mem.certificate;
        bool ok = (g.expand() * cert.cofactor.expand()) == pow(f.expand(), cert.m) && image_min_oracle(cert.cofactor, S, p) >= ValInt(0);
        if (!ok) suite::fail(r, "certificate fails for " + g.to_string());
    }
    r.pass = r.failures == 0 && accepted > 0 && rejected > 0;
    if (r.failures == 0 && !r.pass) r.detail = "population not mixed";
    if (r.pass) r.detail = std::to_string(accepted) + " accepted with verified certificates, " + std::to_string(rejected) + " rejected";
    return r;
}

inline CriterionResult criterion_image_primitive(const SuiteOptions& opt) {
    CriterionResult r{8, "image-primitive case x(x-1) at 3"};
    Poly x = suite::x_poly();
    Poly x1 = x - Poly({Rational(1)});
    FactoredPoly f = factor_over_Q(x * x1);
    Prime p(3);
    MonoidContext ctx(f, SetSpec::integers(), p);
    std::mt19937_64 rng(opt.seed + 8);
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::vector<Rational> units = {Rational(1), Rational(-1), Rational(2), Rational(5, 7), Rational(-4, 5)};
    std::vector<FactoredPoly> members;
    for (int i = 0; i < 100; ++i) {
        std::vector<Factor> fs;
        unsigned e0 = static_cast<unsigned>(uni(0, 3)), e1 = static_cast<unsigned>(uni(0, 3));
        if (e0) fs.push_back({x, e0});
        if (e1) fs.push_back({x1, e1});
        bool support = true;
        if (i % 10 == 9) {
            fs.push_back({x + Poly({Rational(1)}), 1});
            support = false;
        }
        Rational c = ppow(p, uni(-2, 2)) * units[static_cast<std::size_t>(uni(0, 4))];
        FactoredPoly g(c, fs);
        bool expected = support && vp(poly_content(g.expand()), p) == ValInt(0);
        ++r.cases;
        bool got = ctx.in_monoid(g).member;
        if (got != expected) suite::fail(r, "membership of " + g.to_string());
        if (got) members.push_back(g);
    }
    std::size_t divisible = 0;
    for (int i = 0; i < 100 && !members.empty(); ++i) {
        const auto& a = members[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(members.size()) - 1))];
        FactoredPoly b = members[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(members.size()) - 1))];
        if (i % 2 == 1) b = a * b;
        auto [q, rem] = divrem(b.expand(), a.expand());
        bool expected = rem.is_zero();
        divisible += expected ? 1 : 0;
        ++r.cases;
        if (ctx.divides_in_monoid(a, b).divides != expected) suite::fail(r, "divisibility of " + b.to_string() + " by " + a.to_string());
    }
    r.pass = r.failures == 0 && !members.empty() && divisible > 0;
    if (r.pass) r.detail = std::to_string(members.size()) + " members of 100, " + std::to_string(divisible) + " divisible pairs of 100";
    return r;
}

inline CriterionResult criterion_global(const SuiteOptions& opt) {
    CriterionResult r{9, "global homomorphism over Z"};
    Poly x = suite::x_poly();
    FactoredPoly f1 = factor_over_Q(x * (x + Poly({Rational(1)})) * Poly({Rational(1, 2)}));
    FactoredPoly f2 = factor_over_Q(x * (x - Poly({Rational(1)})) * (x - Poly({Rational(2)})));
    SetSpec Z = SetSpec::integers();
    auto as_ints = [](const std::vector<Prime>& ps) {
        std::vector<std::uint64_t> v;
        for (auto q : ps) v.push_back(q.value());
        return v;
    };
    r.cases += 2;
    if (as_ints(critical_primes(f1, Z)) != std::vector<std::uint64_t>{2}) suite::fail(r, "critical primes of x(x+1)/2 are not {2}");
    if (as_ints(critical_primes(f2, Z)) != std::vector<std::uint64_t>{2, 3}) suite::fail(r, "critical primes of x(x-1)(x-2) are not {2, 3}");
    for (const auto& f : {f1, f2}) {
        GlobalContext g(f, Z);
        auto rep = verify_divisor_hom(g, 100, opt.seed);
        r.cases += rep.pairs;
        if (rep.pairs != 100 || !rep.ok()) suite::fail(r, "global counterexample for f = " + f.to_string());
    }
    GlobalContext g1(f1, Z);
    ++r.cases;
    if (divides_in_M(g1.phi(FactoredPoly(Rational(1), {{x, 1}})), g1.phi(f1))) suite::fail(r, "phi(x) divides phi(f)");
    r.pass = r.failures == 0;
    if (r.pass) r.detail = "critical primes {2} and {2, 3}; 200 global pairs; phi(x) does not divide phi(f)";
    return r;
}

inline CriterionResult criterion_closure(const SuiteOptions& opt) {
    CriterionResult r{10, "closure axioms"};
    Poly x = suite::x_poly();
    std::vector<Poly> pool;
    for (int a = -6; a <= 6; ++a) pool.push_back(x - Poly({Rational(a)}));
    pool.push_back(x * x + Poly({Rational(1)}));
    pool.push_back(x * x + x + Poly({Rational(1)}));
    pool.push_back(x * x + Poly({Rational(2)}));
    std::mt19937_64 rng(opt.seed + 10);
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::int64_t W = 40;
    std::size_t certificates = 0;

    for (int cfg = 0; cfg < 50; ++cfg) {
        Prime p(cfg % 2 == 0 ? 2u : 3u);
        std::vector<Poly> H;
        std::size_t nh = static_cast<std::size_t>(uni(1, 3));
        while (H.size() < nh) {
            const Poly& h = pool[static_cast<std::size_t>(uni(0, static_cast<std::int64_t>(pool.size()) - 1))];
            if (std::find(H.begin(), H.end(), h) == H.end()) H.push_back(h);
        }
        std::sort(H.begin(), H.end(), factor_order_less);
        std::vector<Rational> T;
        std::size_t nt = static_cast<std::size_t>(uni(1, 4));
        while (T.size() < nt) {
            Rational t(uni(-30, 30));
            if (std::find(T.begin(), T.end(), t) == T.end()) T.push_back(t);
        }
        auto sigma = scaled_factors(H, p);
        auto vectors = [&](const std::vector<Rational>& pts, const std::vector<Poly>& sg) {
            std::vector<ValVector> v;
            for (const auto& t : pts) v.push_back(val_vector_scaled(t, sg, p));
            return v;
        };
        auto closure_on_window = [&](const std::vector<ValVector>& tv, const std::vector<Poly>& sg) {
            std::set<std::int64_t> in;
            for (std::int64_t s = -W; s <= W; ++s) {
                ValVector xv = val_vector_scaled(Rational(s), sg, p);
                auto res = in_closure_vector(xv, tv);
                ++certificates;
                if (!suite::certificate_ok(xv, tv, res)) suite::fail(r, "bad dominance certificate at s = " + std::to_string(s));
                if (res.inside) in.insert(s);
            }
            return in;
        };
        auto subset = [](const std::set<std::int64_t>& a, const std::set<std::int64_t>& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
        std::string where = "config " + std::to_string(cfg);

        auto TV = vectors(T, sigma);
        auto cl = closure_on_window(TV, sigma);

        // Extensivity.
        ++r.cases;
        for (const auto& t : T) {
            if (!in_closure(t, T, H, p).inside) suite::fail(r, "extensivity fails, " + where);
        }

        // Idempotence: closing the window part of cl(T) again adds nothing.
        ++r.cases;
        std::vector<Rational> C;
        for (auto s : cl) C.push_back(Rational(s));
        if (closure_on_window(minimal_elements(vectors(C, sigma)), sigma) != cl) suite::fail(r, "idempotence fails, " + where);

        // Monotonicity in T.
        ++r.cases;
        std::vector<Rational> T2 = T;
        T2.push_back(Rational(uni(-30, 30)));
        if (!subset(cl, closure_on_window(vectors(T2, sigma), sigma))) suite::fail(r, "monotonicity fails, " + where);

        // Antitonicity in the factor set.
        if (H.size() >= 2) {
            ++r.cases;
            std::vector<Poly> H2 = H;
            H2.erase(H2.begin() + uni(0, static_cast<std::int64_t>(H2.size()) - 1));
            auto sigma2 = scaled_factors(H2, p);
            if (!subset(cl, closure_on_window(vectors(T, sigma2), sigma2))) suite::fail(r, "antitonicity fails, " + where);
        }
    }
    r.pass = r.failures == 0;
    if (r.pass) r.detail = "50 configurations, " + std::to_string(r.cases) + " axiom checks, " + std::to_string(certificates) + " certificates verified";
    return r;
}

inline CriterionResult criterion_value_by_roots(const SuiteOptions& opt) {
    CriterionResult r{11, "valuation decomposition by roots"};
    std::mt19937_64 rng(opt.seed + 11);
    auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
    const std::vector<std::uint64_t> primes = {2, 3, 5, 7};
    for (int i = 0; i < 500; ++i) {
        Prime p(primes[static_cast<std::size_t>(uni(0, 3))]);
        std::vector<std::pair<Rational, unsigned>> roots;
        std::size_t n = static_cast<std::size_t>(uni(1, 4));
        while (roots.size() < n) {
            Rational a = suite::frac(uni(-40, 40), uni(1, 6));
            if (std::any_of(roots.begin(), roots.end(), [&](const auto& q) { return q.first == a; })) continue;
            roots.emplace_back(a, static_cast<unsigned>(uni(1, 3)));
        }
        Rational c = suite::frac(uni(1, 30) * (uni(0, 1) ? 1 : -1), uni(1, 30));
        FactoredPoly f = suite::from_roots(c, roots);
        Rational s;
        if (i % 10 == 0 && vp(roots[0].first, p) >= ValInt(0)) {
            s = roots[0].first;
        } else {
            std::int64_t d;
            do {
                d = uni(1, 6);
            } while (d % static_cast<std::int64_t>(p.value()) == 0);
            s = suite::frac(uni(-200, 200), d);
        }
        ++r.cases;
        ValInt direct = vp(f.expand()(s), p);
        try {
            if (value_by_roots(f, s, p) != direct) suite::fail(r, "mismatch for " + f.to_string() + " at " + to_string(s));
        } catch (const std::logic_error&) {
            suite::fail(r, "mismatch for " + f.to_string() + " at " + to_string(s));
        }
    }
    r.pass = r.failures == 0;
    if (r.pass) r.detail = "500 random cases";
    return r;
}

/// Runs the criteria in order, calling `report` after each one.
inline std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {}, const std::function<void(const CriterionResult&)>& report = {}) {
    suite::InstanceBank bank(opt);
    std::vector<std::function<CriterionResult()>> steps = {
        [&] { return criterion_dense_correct(bank, opt); },
        [&] { return criterion_cardinality(bank); },
        [&] { return criterion_root_free(bank, opt); },
        [&] { return criterion_oracle_equivalence(bank); },
        [&] { return criterion_divisor_hom(opt); },
        [] { return criterion_witnesses(); },
        [&] { return criterion_monoid_equality(opt); },
        [&] { return criterion_image_primitive(opt); },
        [&] { return criterion_global(opt); },
        [&] { return criterion_closure(opt); },
        [&] { return criterion_value_by_roots(opt); },
    };
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = steps[i]();
        } catch (const std::exception& e) {
            r.id = static_cast<int>(i + 1);
            r.name = "criterion " + std::to_string(i + 1);
            r.pass = false;
            r.failures = 1;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (report) report(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << (r.id < 10 ? " " : "") << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")";
    return os.str();
}

}  // namespace ivp

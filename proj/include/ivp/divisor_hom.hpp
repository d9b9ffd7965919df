#pragma once

// The map phi into a free commutative monoid (local and global), its gcds,
// divisor-theory witnesses and the sampled equivalence check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ivp/monoid.hpp"

namespace ivp {

/// Element of N_0^H (+) sum over primes of N_0^{T_p}.
struct PhiVector {
    std::vector<std::int64_t> h;
    std::map<std::uint64_t, std::vector<ValInt>> t;

    bool same_shape(const PhiVector& o) const {
        if (h.size() != o.h.size() || t.size() != o.t.size()) return false;
        for (const auto& [p, v] : t) {
            auto it = o.t.find(p);
            if (it == o.t.end() || it->second.size() != v.size()) return false;
        }
        return true;
    }

    friend bool operator==(const PhiVector&, const PhiVector&) = default;

    friend PhiVector operator+(const PhiVector& a, const PhiVector& b) {
        if (!a.same_shape(b)) throw InputError("phi vectors of different shape");
        PhiVector r = a;
        for (std::size_t i = 0; i < r.h.size(); ++i) r.h[i] += b.h[i];
        for (auto& [p, v] : r.t) {
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.t.at(p)[i];
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
        s += " |";
        for (const auto& [p, v] : t) {
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : " ") + v[i].to_string();
        }
        return s + ")";
    }
};

/// Componentwise <=.
inline bool divides_in_M(const PhiVector& u, const PhiVector& v) {
    if (!u.same_shape(v)) throw InputError("phi vectors of different shape");
    for (std::size_t i = 0; i < u.h.size(); ++i) {
        if (u.h[i] > v.h[i]) return false;
    }
    for (const auto& [p, a] : u.t) {
        const auto& b = v.t.at(p);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) return false;
        }
    }
    return true;
}

/// Componentwise minimum.
inline PhiVector gcd_in_M(const std::vector<PhiVector>& vs) {
    if (vs.empty()) throw InputError("gcd of an empty set of phi vectors");
    PhiVector g = vs.front();
    for (const auto& v : vs) {
        if (!g.same_shape(v)) throw InputError("phi vectors of different shape");
        for (std::size_t i = 0; i < g.h.size(); ++i) g.h[i] = std::min(g.h[i], v.h[i]);
        for (auto& [p, a] : g.t) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::min(a[i], v.t.at(p)[i]);
        }
    }
    return g;
}

namespace detail {

/// The T block lives in N_0 only when no point of T is a root of f.
inline void require_root_free(const MonoidContext& ctx) {
    if (ctx.root_free()) return;
    std::string roots;
    for (const auto& r : ctx.dense().isolated_roots) roots += (roots.empty() ? "" : ", ") + to_string(r);
    throw PreconditionError("phi needs a root-free dense set at p = " + std::to_string(ctx.prime().value()) + "; isolated roots of f in S: " + roots);
}

}  // namespace detail

inline PhiVector phi_local(const FactoredPoly& g, const MonoidContext& ctx) {
    detail::require_root_free(ctx);
    if (!ctx.in_support(g)) throw DomainError("phi: factor outside H in " + g.to_string());
    if (!ctx.int_valued(g)) throw DomainError("phi: not integer-valued at p = " + std::to_string(ctx.prime().value()));
    PhiVector v;
    for (const auto& h : ctx.factors()) v.h.push_back(g.multiplicity_of(h));
    v.t[ctx.prime().value()] = ctx.values_on_T(g);
    return v;
}

/// Basis vector of the same shape as `like`: coordinate i of the H block
/// (prime 0) or of the T_p block.
inline PhiVector basis_vector(const PhiVector& like, std::uint64_t prime, std::size_t i) {
    PhiVector e = like;
    for (auto& x : e.h) x = 0;
    for (auto& [p, v] : e.t) {
        for (auto& x : v) x = 0;
    }
    if (prime == 0) {
        e.h.at(i) = 1;
    } else {
        e.t.at(prime).at(i) = 1;
    }
    return e;
}

struct Witness {
    std::string label;
    FactoredPoly poly;
    PhiVector phi;
};

struct GcdIdentity {
    std::string basis;
    PhiVector target;
    std::vector<std::string> members;
    PhiVector gcd;
    bool holds = false;
};

struct WitnessSet {
    /// False when d_S(f) = V: only the H block is claimed.
    bool divisor_theory = true;
    std::vector<Rational> points;
    Witness const_p;
    std::vector<Witness> factor_witnesses;
    std::vector<Witness> separators;
    std::vector<Witness> mixed;
    std::vector<GcdIdentity> identities;

    bool all_realized() const {
        return std::all_of(identities.begin(), identities.end(), [](const GcdIdentity& g) { return g.holds; });
    }
};

namespace detail {

/// prod h^{m_h} times p^{shift}, for monic h.
inline FactoredPoly monomial(const std::vector<Poly>& H, const std::vector<unsigned>& m, const Rational& content) {
    std::vector<Factor> fs;
    for (std::size_t i = 0; i < H.size(); ++i) {
        if (m[i] > 0) fs.push_back({H[i], m[i]});
    }
    return FactoredPoly(content, std::move(fs));
}

inline std::string point_label(const Rational& t) { return "t=" + to_string(t); }

}  // namespace detail

/// Witnesses for every basis vector over a minimal dense set: the constant p,
/// the primitive factors, separators g_t and mixed g_{t,h}.
inline WitnessSet build_witnesses(const MonoidContext& base, unsigned witness_bound = 32) {
    MonoidContext ctx = base.minimized();
    if (!ctx.root_free()) throw PreconditionError("witnesses need a root-free dense set (a root of f is isolated in S)");
    Prime p = ctx.prime();
    const auto& H = ctx.factors();
    const DenseSet& T = ctx.dense();
    WitnessSet ws;
    ws.divisor_theory = ctx.fixed_divisor_val() > ValInt(0);
    ws.points = T.points;

    auto make = [&](std::string label, FactoredPoly g) {
        if (!ctx.int_valued(g)) throw std::logic_error("witness " + label + " is not integer-valued");
        PhiVector phi = phi_local(g, ctx);
        return Witness{std::move(label), std::move(g), std::move(phi)};
    };

    ws.const_p = make("p", FactoredPoly::constant(Rational(p.as_integer())));
    std::vector<std::int64_t> alpha;
    for (const auto& h : H) alpha.push_back(scaling_exponent(h, p));
    for (std::size_t i = 0; i < H.size(); ++i) {
        std::vector<unsigned> m(H.size(), 0);
        m[i] = 1;
        ws.factor_witnesses.push_back(make("sigma[" + H[i].to_string() + "]", detail::monomial(H, m, ppow(p, alpha[i]))));
    }
    const PhiVector& shape = ws.const_p.phi;

    if (!ws.divisor_theory) {
        for (std::size_t i = 0; i < H.size(); ++i) {
            GcdIdentity id;
            id.basis = "e[" + H[i].to_string() + "]";
            id.target = basis_vector(shape, 0, i);
            id.members = {ws.factor_witnesses[i].label};
            id.gcd = ws.factor_witnesses[i].phi;
            id.holds = id.gcd.h == id.target.h;
            ws.identities.push_back(std::move(id));
        }
        return ws;
    }

    // Separators: exponent vectors with t the unique minimiser on T.
    for (std::size_t ti = 0; ti < T.points.size(); ++ti) {
        std::optional<std::vector<unsigned>> found;
        for (unsigned B = 1; B <= witness_bound && !found; B *= 2) {
            std::vector<unsigned> m(H.size(), 0);
            for (;;) {
                ValInt at = functional_value(m, T.vectors[ti]);
                bool unique = true;
                for (std::size_t r = 0; r < T.points.size() && unique; ++r) {
                    if (r != ti && functional_value(m, T.vectors[r]) <= at) unique = false;
                }
                if (unique) {
                    found = m;
                    break;
                }
                std::size_t pos = H.size();
                while (pos > 0 && m[pos - 1] == B) m[--pos] = 0;
                if (pos == 0) break;
                ++m[pos - 1];
            }
        }
        if (!found) throw ResourceError("no separator found for basis vector e[" + detail::point_label(T.points[ti]) + "] within bound " + std::to_string(witness_bound));
        std::int64_t shift = -functional_value(*found, T.vectors[ti]).value();
        for (std::size_t i = 0; i < H.size(); ++i) shift += static_cast<std::int64_t>((*found)[i]) * alpha[i];
        ws.separators.push_back(make("g[" + detail::point_label(T.points[ti]) + "]", detail::monomial(H, *found, ppow(p, shift))));
    }

    // Mixed witnesses p^{-a} sigma_h g_t^a with a = v(sigma_h(t)).
    for (std::size_t ti = 0; ti < T.points.size(); ++ti) {
        for (std::size_t i = 0; i < H.size(); ++i) {
            std::int64_t a = T.vectors[ti][i].value();
            FactoredPoly g = ws.factor_witnesses[i].poly.scaled(ppow(p, -a)) * pow(ws.separators[ti].poly, static_cast<unsigned>(a));
            ws.mixed.push_back(make("g[" + detail::point_label(T.points[ti]) + "," + H[i].to_string() + "]", std::move(g)));
        }
    }

    for (std::size_t i = 0; i < H.size(); ++i) {
        GcdIdentity id;
        id.basis = "e[" + H[i].to_string() + "]";
        id.target = basis_vector(shape, 0, i);
        std::vector<PhiVector> vs;
        for (std::size_t ti = 0; ti < T.points.size(); ++ti) {
            const auto& w = ws.mixed[ti * H.size() + i];
            id.members.push_back(w.label);
            vs.push_back(w.phi);
        }
        id.members.push_back(ws.factor_witnesses[i].label);
        vs.push_back(ws.factor_witnesses[i].phi);
        id.gcd = gcd_in_M(vs);
        id.holds = id.gcd == id.target;
        ws.identities.push_back(std::move(id));
    }
    for (std::size_t ti = 0; ti < T.points.size(); ++ti) {
        GcdIdentity id;
        id.basis = "e[" + detail::point_label(T.points[ti]) + "]";
        id.target = basis_vector(shape, p.value(), ti);
        std::vector<PhiVector> vs;
        for (std::size_t r = 0; r < T.points.size(); ++r) {
            if (r == ti) continue;
            id.members.push_back(ws.separators[r].label);
            vs.push_back(ws.separators[r].phi);
        }
        id.members.push_back(ws.const_p.label);
        vs.push_back(ws.const_p.phi);
        id.gcd = gcd_in_M(vs);
        id.holds = id.gcd == id.target;
        ws.identities.push_back(std::move(id));
    }
    return ws;
}

/// Primes where f is not p-integral or has positive fixed-divisor valuation on S.
inline std::vector<Prime> critical_primes(const FactoredPoly& f, const SetSpec& S, const MonoidOptions& opt = {}) {
    Poly fe = f.expand();
    Integer D(1);
    for (const auto& c : fe.coeffs()) D = lcm(D, c.get_den());
    Poly F = fe * Rational(D);
    std::vector<Integer> pts;
    int deg = std::max(fe.degree(), 0);
    switch (S.kind()) {
        case SetSpec::Kind::Integers:
            for (int i = 0; i <= deg; ++i) pts.emplace_back(i);
            break;
        case SetSpec::Kind::Residues:
            for (Integer s = 0; static_cast<int>(pts.size()) <= deg; ++s) {
                if (S.contains(Rational(s))) pts.push_back(s);
            }
            break;
        case SetSpec::Kind::Finite:
            for (const auto& e : S.elements()) {
                if (e.get_den() != 1) throw InputError("global scope needs a set of integers");
                pts.push_back(e.get_num());
            }
            break;
    }
    Integer G(0);
    for (const auto& s : pts) G = gcd(G, F(Rational(s)).get_num());
    if (G == 0) throw InputError("f vanishes on all of S");
    std::vector<Integer> cands = prime_factors(G);
    for (const auto& q : prime_factors(D)) cands.push_back(q);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<Prime> out;
    for (const auto& q : cands) {
        if (!q.fits_ulong_p()) throw ResourceError("critical prime candidate too large: " + q.get_str());
        Prime p(q.get_ui());
        if (mpz_divisible_p(D.get_mpz_t(), q.get_mpz_t())) {
            out.push_back(p);
            continue;
        }
        MonoidContext ctx(f, S, p, opt);
        if (ctx.fixed_divisor_val() > ValInt(0)) out.push_back(p);
    }
    return out;
}

/// [[f]] inside Int(S, Z) with the local data at every critical prime.
class GlobalContext {
public:
    GlobalContext(FactoredPoly f, SetSpec S, const MonoidOptions& opt = {}) : f_(std::move(f)), S_(std::move(S)), opt_(opt) {
        if (S_.kind() == SetSpec::Kind::Finite) {
            for (const auto& e : S_.elements()) {
                if (e.get_den() != 1) throw InputError("global scope needs a set of integers");
            }
        }
        primes_ = critical_primes(f_, S_, opt_);
        for (auto p : primes_) locals_.emplace_back(f_, S_, p, opt_);
        for (const auto& x : f_.factors()) H_.push_back(x.poly);
    }

    const FactoredPoly& f() const { return f_; }
    const SetSpec& set() const { return S_; }
    const std::vector<Prime>& primes() const { return primes_; }
    const std::vector<MonoidContext>& locals() const { return locals_; }
    const std::vector<Poly>& factors() const { return H_; }

    bool is_critical(const Integer& q) const {
        return std::any_of(primes_.begin(), primes_.end(), [&](Prime p) { return p.as_integer() == q; });
    }

    /// Primes outside the critical set where the content of g is not a unit.
    std::vector<Integer> noncritical_content_primes(const FactoredPoly& g) const {
        Rational c = poly_content(g.expand());
        std::vector<Integer> bad;
        for (const auto& part : {c.get_num(), c.get_den()}) {
            if (part == 1) continue;
            for (const auto& q : prime_factors(part)) {
                if (!is_critical(q)) bad.push_back(q);
            }
        }
        return bad;
    }

    Membership in_monoid(const FactoredPoly& g) const {
        Membership res;
        if (!std::all_of(g.factors().begin(), g.factors().end(), [&](const Factor& x) { return f_.multiplicity_of(x.poly) > 0; })) {
            res.reason = "foreign factor";
            return res;
        }
        auto bad = noncritical_content_primes(g);
        if (!bad.empty()) {
            Rational c = poly_content(g.expand());
            res.reason = vp(c, Prime(bad.front().get_ui())) < ValInt(0) ? "not integer-valued" : "non-primitive";
            return res;
        }
        unsigned m = 1;
        for (const auto& x : g.factors()) {
            unsigned mf = f_.multiplicity_of(x.poly);
            m = std::max(m, (x.mult + mf - 1) / mf);
        }
        for (const auto& ctx : locals_) {
            auto r = ctx.in_monoid(g);
            if (!r.member) {
                res.reason = r.reason;
                return res;
            }
            m = std::max(m, r.certificate->m);
        }
        MembershipCertificate cert;
        cert.m = m;
        cert.cofactor = *divide_exact(pow(f_, m), g);
        cert.kind = CertificateKind::ArchimedeanBound;
        for (const auto& ctx : locals_) {
            if (!ctx.int_valued(cert.cofactor)) throw std::logic_error("global cofactor not integer-valued");
        }
        if (!noncritical_content_primes(cert.cofactor).empty()) throw std::logic_error("global cofactor has a non-critical content prime");
        res.member = true;
        res.certificate = std::move(cert);
        return res;
    }

    PhiVector phi(const FactoredPoly& g) const {
        PhiVector v;
        for (const auto& h : H_) v.h.push_back(g.multiplicity_of(h));
        for (const auto& x : g.factors()) {
            if (f_.multiplicity_of(x.poly) == 0) throw DomainError("phi: factor outside H in " + g.to_string());
        }
        Rational c = poly_content(g.expand());
        for (const auto& q : prime_factors(c.get_den() == 1 ? Integer(1) : c.get_den())) {
            if (!is_critical(q)) throw DomainError("phi: not integer-valued at non-critical prime " + q.get_str());
        }
        for (const auto& ctx : locals_) {
            detail::require_root_free(ctx);
            if (!ctx.int_valued(g)) throw DomainError("phi: not integer-valued at p = " + std::to_string(ctx.prime().value()));
            v.t[ctx.prime().value()] = ctx.values_on_T(g);
        }
        return v;
    }

    /// b / a in Q[x] and integer-valued on S at every prime, by brute force at
    /// the critical primes and at primes in the content denominator.
    Divisibility divides_in_monoid(const FactoredPoly& a, const FactoredPoly& b) const {
        Divisibility d;
        auto c = divide_exact(b, a);
        if (!c) {
            d.reason = "not a divisor in Q[x]";
            return d;
        }
        std::vector<Integer> qs;
        for (auto p : primes_) qs.push_back(p.as_integer());
        Rational content = poly_content(c->expand());
        if (content.get_den() != 1) {
            for (const auto& q : prime_factors(content.get_den())) qs.push_back(q);
        }
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        for (const auto& q : qs) {
            if (image_min_oracle(*c, S_, Prime(q.get_ui()), opt_.oracle_depth) < ValInt(0)) {
                d.reason = "cofactor not integer-valued at " + q.get_str();
                return d;
            }
        }
        d.divides = true;
        d.cofactor = std::move(c);
        return d;
    }

    std::vector<FactoredPoly> sample(std::size_t count, unsigned m_max, std::uint64_t seed) const {
        if (m_max < 1) throw PreconditionError("m_max must be at least 1");
        std::mt19937_64 rng(seed);
        std::vector<FactoredPoly> out;
        std::size_t attempts = 0;
        std::size_t limit = 60 * count + 200;
        while (out.size() < count && attempts++ < limit) {
            unsigned m = std::uniform_int_distribution<unsigned>(1, m_max)(rng);
            std::vector<Factor> fs;
            for (const auto& x : f_.factors()) {
                unsigned e = std::uniform_int_distribution<unsigned>(0, m * x.mult)(rng);
                if (e > 0) fs.push_back({x.poly, e});
            }
            FactoredPoly base(Rational(1), fs);
            Rational content = (rng() & 1u) ? Rational(1) : Rational(-1);
            for (const auto& ctx : locals_) {
                ValInt lo = ctx.image_min(base);
                std::int64_t l = lo.is_finite() ? -lo.value() : 0;
                std::int64_t hi = static_cast<std::int64_t>(m_max);
                content *= ppow(ctx.prime(), std::uniform_int_distribution<std::int64_t>(std::min(l, hi), hi)(rng));
            }
            FactoredPoly g = base.scaled(content);
            if (std::find(out.begin(), out.end(), g) != out.end()) continue;
            if (in_monoid(g).member) out.push_back(std::move(g));
        }
        return out;
    }

private:
    FactoredPoly f_;
    SetSpec S_;
    MonoidOptions opt_;
    std::vector<Prime> primes_;
    std::vector<MonoidContext> locals_;
    std::vector<Poly> H_;
};

inline PhiVector phi_global(const FactoredPoly& g, const GlobalContext& ctx) { return ctx.phi(g); }

struct PairCheck {
    std::size_t index = 0;
    FactoredPoly a;
    FactoredPoly b;
    bool phi_divides = false;
    bool monoid_divides = false;
    bool homomorphism = true;
};

struct VerifyReport {
    std::size_t pairs = 0;
    std::size_t equivalences = 0;
    std::size_t both_divide = 0;
    std::size_t neither_divides = 0;
    std::size_t homomorphism_failures = 0;
    std::size_t pool = 0;
    std::vector<PairCheck> counterexamples;

    bool ok() const { return counterexamples.empty() && homomorphism_failures == 0 && equivalences == pairs; }
};

/// Sampled check of divides_in_M(phi(a), phi(b)) <=> a | b in [[f]]. Half the
/// pairs are independent draws, half have the form (a, a*c) so that the
/// divisible side is exercised.
template <class Ctx, class Phi>
VerifyReport verify_pairs(const Ctx& ctx, Phi phi, std::size_t samples, std::uint64_t seed, unsigned m_max = 2) {
    VerifyReport rep;
    if (samples == 0) return rep;
    std::size_t pool_size = std::min<std::size_t>(std::max<std::size_t>(samples / 5, 8), 40);
    auto pool = ctx.sample(pool_size, m_max, seed);
    rep.pool = pool.size();
    if (pool.empty()) throw ResourceError("could not sample any monoid elements");
    std::vector<PhiVector> phis;
    for (const auto& g : pool) phis.push_back(phi(g));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        std::size_t ia = pick(rng);
        std::size_t ib = pick(rng);
        PairCheck pc;
        pc.index = i;
        pc.a = pool[ia];
        PhiVector pa = phis[ia];
        PhiVector pb;
        if (i % 2 == 0) {
            pc.b = pool[ib];
            pb = phis[ib];
        } else {
            pc.b = pool[ia] * pool[ib];
            pb = phi(pc.b);
            pc.homomorphism = pb == phis[ia] + phis[ib];
            if (!pc.homomorphism) ++rep.homomorphism_failures;
        }
        pc.phi_divides = divides_in_M(pa, pb);
        pc.monoid_divides = ctx.divides_in_monoid(pc.a, pc.b).divides;
        ++rep.pairs;
        if (pc.phi_divides == pc.monoid_divides) {
            ++rep.equivalences;
            if (pc.phi_divides) {
                ++rep.both_divide;
            } else {
                ++rep.neither_divides;
            }
        }
        if (pc.phi_divides != pc.monoid_divides || !pc.homomorphism) rep.counterexamples.push_back(pc);
    }
    return rep;
}

inline VerifyReport verify_divisor_hom(const MonoidContext& ctx, std::size_t samples, std::uint64_t seed, unsigned m_max = 2) {
    return verify_pairs(ctx, [&](const FactoredPoly& g) { return phi_local(g, ctx); }, samples, seed, m_max);
}

inline VerifyReport verify_divisor_hom(const GlobalContext& ctx, std::size_t samples, std::uint64_t seed, unsigned m_max = 2) {
    return verify_pairs(ctx, [&](const FactoredPoly& g) { return ctx.phi(g); }, samples, seed, m_max);
}

inline WitnessSet verify_divisor_theory(const MonoidContext& ctx, unsigned witness_bound = 32) { return build_witnesses(ctx, witness_bound); }

}  // namespace ivp

#pragma once

// The divisor-closed monoid [[f]] generated by f inside Int(S, Z_(p)):
// fixed divisors, membership certificates, divisibility and sampling.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ivp/density.hpp"
#include "ivp/factor.hpp"
#include "ivp/set_model.hpp"

namespace ivp {

struct MonoidOptions {
    DenseOptions dense;
    /// Largest window exponent K for the brute-force integrality oracle.
    unsigned oracle_depth = 40;
};

namespace detail {

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

}  // namespace detail

/// Exact min over S of vp(g(s)) by scanning residues: for g = c * prod sigma_h^e
/// with p-primitive sigma_h, the value of the primitive part at s is fixed
/// by s mod p^K whenever it is below K. Independent of any dense set.
inline ValInt image_min_oracle(const FactoredPoly& g, const SetSpec& S, Prime p, unsigned max_depth = 40) {
    S.check_local(p);
    std::vector<Poly> sigma;
    std::vector<unsigned> e;
    Rational content = g.content();
    for (const auto& f : g.factors()) {
        sigma.push_back(primitive_scaling(f.poly, p));
        e.push_back(f.mult);
        content *= ppow(p, -scaling_exponent(f.poly, p) * static_cast<std::int64_t>(f.mult));
    }
    ValInt base = vp(content, p);
    auto prim_val = [&](const Rational& s) {
        ValInt v(0);
        for (std::size_t i = 0; i < sigma.size(); ++i) v += scale(e[i], vp(sigma[i](s), p));
        return v;
    };
    if (S.kind() == SetSpec::Kind::Finite) {
        ValInt best = ValInt::infinity();
        for (const auto& s : S.elements()) best = std::min(best, prim_val(s));
        return base + best;
    }
    if (sigma.empty()) return base;
    Integer M = S.kind() == SetSpec::Kind::Residues ? S.modulus() : Integer(1);
    for (unsigned K = 1; K <= max_depth; ++K) {
        Integer L = lcm(M, pow(p, K));
        ValInt best = ValInt::infinity();
        auto visit = [&](const Integer& s) {
            ValInt v = prim_val(Rational(s));
            best = std::min(best, std::min(v, ValInt(K)));
        };
        if (S.kind() == SetSpec::Kind::Integers) {
            for (Integer s = 0; s < L; ++s) visit(s);
        } else {
            for (const auto& r : S.residues()) {
                for (Integer s = r; s < L; s += M) visit(s);
            }
        }
        if (best < ValInt(K)) return base + best;
        if (L > Integer(1) << 22) break;
    }
    throw ResourceError("integrality oracle window exhausted");
}

enum class CertificateKind { ImagePrimitive, ArchimedeanBound };

inline const char* to_string(CertificateKind k) { return k == CertificateKind::ImagePrimitive ? "image_primitive" : "archimedean_bound"; }

/// g * cofactor = f^m with both sides integer-valued on S.
struct MembershipCertificate {
    unsigned m = 0;
    FactoredPoly cofactor;
    CertificateKind kind = CertificateKind::ImagePrimitive;
    /// Exponent bound from the fixed-divisor argument (present when d_S(f) != V).
    std::optional<std::int64_t> analytic_bound;
};

struct Membership {
    bool member = false;
    /// "foreign factor", "not integer-valued" or "non-primitive" on refusal.
    std::string reason;
    std::optional<MembershipCertificate> certificate;
};

struct Divisibility {
    bool divides = false;
    std::optional<FactoredPoly> cofactor;
    std::string reason;
};

class MonoidContext {
public:
    MonoidContext(FactoredPoly f, SetSpec S, Prime p, const MonoidOptions& opt = {})
        : f_(std::move(f)), S_(std::move(S)), p_(p), opt_(opt), T_(make_dense(f_, S_, p_, opt_)) {
        for (const auto& fac : f_.factors()) H_.push_back(fac.poly);
        fixed_ = image_min(f_);
        if (fixed_ < ValInt(0)) throw InputError("f is not integer-valued on S at p = " + std::to_string(p_.value()));
    }

    const FactoredPoly& f() const { return f_; }
    const SetSpec& set() const { return S_; }
    Prime prime() const { return p_; }
    const std::vector<Poly>& factors() const { return H_; }
    const DenseSet& dense() const { return T_; }
    const MonoidOptions& options() const { return opt_; }
    /// vp of the fixed divisor d_S(f).
    ValInt fixed_divisor_val() const { return fixed_; }
    /// No point of T is a root of f.
    bool root_free() const { return T_.isolated_roots.empty(); }

    /// Same context over an inclusion-minimal dense subset of T.
    MonoidContext minimized() const {
        MonoidContext out = *this;
        if (!H_.empty()) out.T_ = minimize_dense_set(T_, S_, opt_.dense);
        return out;
    }

    bool in_support(const FactoredPoly& g) const {
        return std::all_of(g.factors().begin(), g.factors().end(), [&](const Factor& x) { return f_.multiplicity_of(x.poly) > 0; });
    }

    /// vp(g(t)) for each t in T, for g supported on H.
    std::vector<ValInt> values_on_T(const FactoredPoly& g) const {
        if (!in_support(g)) throw DomainError("polynomial has a factor outside H: " + g.to_string());
        std::vector<ValInt> out;
        for (std::size_t i = 0; i < T_.points.size(); ++i) {
            ValInt v = vp(g.content(), p_);
            for (std::size_t h = 0; h < H_.size(); ++h) {
                unsigned e = g.multiplicity_of(H_[h]);
                if (e == 0) continue;
                ValInt vh = T_.vectors[i][h];
                std::int64_t shift = -scaling_exponent(H_[h], p_);
                v += scale(e, vh.is_infinite() ? vh : ValInt(vh.value() + shift));
            }
            out.push_back(v);
        }
        return out;
    }

    /// vp(d_S(g)); factors outside H get a dense set of their own.
    ValInt image_min(const FactoredPoly& g) const {
        if (in_support(g)) {
            auto vals = values_on_T(g);
            return *std::min_element(vals.begin(), vals.end());
        }
        std::vector<Poly> all = H_;
        for (const auto& x : g.factors()) {
            if (std::find(all.begin(), all.end(), x.poly) == all.end()) all.push_back(x.poly);
        }
        DenseSet d = dense_set(S_, all, p_, opt_.dense);
        Poly ge = g.expand();
        ValInt best = ValInt::infinity();
        for (const auto& t : d.points) best = std::min(best, vp(ge(t), p_));
        return best;
    }

    bool int_valued(const FactoredPoly& g) const { return image_min(g) >= ValInt(0); }
    bool is_image_primitive(const FactoredPoly& g) const { return image_min(g) == ValInt(0); }

    Membership in_monoid(const FactoredPoly& g) const {
        Membership res;
        if (!in_support(g)) {
            res.reason = "foreign factor";
            return res;
        }
        if (!int_valued(g)) {
            res.reason = "not integer-valued";
            return res;
        }
        // Smallest k with g | f^k in Q[x].
        unsigned k = 1;
        for (const auto& x : g.factors()) {
            unsigned mf = f_.multiplicity_of(x.poly);
            k = std::max(k, (x.mult + mf - 1) / mf);
        }
        FactoredPoly ck = *divide_exact(pow(f_, k), g);
        auto ck_vals = values_on_T(ck);
        auto f_vals = values_on_T(f_);
        std::int64_t extra = 0;
        for (std::size_t i = 0; i < ck_vals.size(); ++i) {
            if (ck_vals[i] >= ValInt(0)) continue;
            if (f_vals[i] == ValInt(0)) {
                res.reason = "non-primitive";
                return res;
            }
            if (f_vals[i].is_infinite()) {
                extra = std::max<std::int64_t>(extra, 1);
                continue;
            }
            extra = std::max(extra, detail::ceil_div(-ck_vals[i].value(), f_vals[i].value()));
        }
        MembershipCertificate cert;
        cert.m = k + static_cast<unsigned>(extra);
        cert.cofactor = *divide_exact(pow(f_, cert.m), g);
        cert.kind = fixed_ > ValInt(0) ? CertificateKind::ArchimedeanBound : CertificateKind::ImagePrimitive;
        if (fixed_ > ValInt(0) && fixed_.is_finite()) {
            ValInt mk = image_min(ck);
            std::int64_t bound = k;
            if (mk.is_finite()) bound += std::max<std::int64_t>(0, detail::ceil_div(-mk.value(), fixed_.value()));
            if (bound < static_cast<std::int64_t>(cert.m)) throw std::logic_error("membership exponent exceeds the analytic bound");
            cert.analytic_bound = bound;
        }
        if (!int_valued(cert.cofactor)) throw std::logic_error("membership cofactor is not integer-valued");
        if ((g * cert.cofactor).expand() != pow(f_, cert.m).expand()) throw std::logic_error("membership certificate does not multiply out");
        res.member = true;
        res.certificate = std::move(cert);
        return res;
    }

    /// a | b in [[f]]: b / a in Q[x] and integer-valued on S, decided by the
    /// brute-force oracle.
    Divisibility divides_in_monoid(const FactoredPoly& a, const FactoredPoly& b) const {
        Divisibility d;
        auto c = divide_exact(b, a);
        if (!c) {
            d.reason = "not a divisor in Q[x]";
            return d;
        }
        if (image_min_oracle(*c, S_, p_, opt_.oracle_depth) < ValInt(0)) {
            d.reason = "cofactor not integer-valued";
            return d;
        }
        d.divides = true;
        d.cofactor = std::move(c);
        return d;
    }

    /// a * g for g in [[f]] and -vp(d_S(g)) <= vp(a) <= 0.
    FactoredPoly scale_into_monoid(const FactoredPoly& g, const Rational& a) const {
        if (a == 0) throw PreconditionError("scaling constant must be nonzero");
        auto mem = in_monoid(g);
        if (!mem.member) throw DomainError("polynomial is not in the monoid (" + mem.reason + ")");
        ValInt lo = image_min(g);
        ValInt va = vp(a, p_);
        if (va > ValInt(0) || va.value() < -lo.value()) {
            throw PreconditionError("scaling constant needs " + std::to_string(-lo.value()) + " <= vp(a) <= 0, got vp(a) = " + va.to_string());
        }
        FactoredPoly out = g.scaled(a);
        if (!in_monoid(out).member) throw std::logic_error("scaled element left the monoid");
        return out;
    }

    /// Distinct certified elements p^j * u * prod h^{e_h} with e_h <= m * mult_h.
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
            ValInt base_min = image_min(base);
            std::int64_t lo = base_min.is_finite() ? -base_min.value() : 0;
            std::int64_t hi = static_cast<std::int64_t>(m_max);
            std::int64_t j = std::uniform_int_distribution<std::int64_t>(std::min(lo, hi), hi)(rng);
            Rational unit = (rng() & 1u) ? Rational(1) : Rational(-1);
            FactoredPoly g = base.scaled(unit * ppow(p_, j));
            if (std::find(out.begin(), out.end(), g) != out.end()) continue;
            if (in_monoid(g).member) out.push_back(std::move(g));
        }
        return out;
    }

private:
    static DenseSet make_dense(const FactoredPoly& f, const SetSpec& S, Prime p, const MonoidOptions& opt) {
        S.check_local(p);
        std::vector<Poly> H;
        for (const auto& x : f.factors()) H.push_back(x.poly);
        if (!H.empty()) return dense_set(S, H, p, opt.dense);
        // Constant f: one representative carries the single coordinate.
        DenseSet d{p, {}, {}, {}, {}, DenseMode::Exact, opt.dense.depth_bound, {}, {}};
        Rational t = S.pick_representative(Ball{}, p);
        d.points.push_back(t);
        d.vectors.push_back({});
        d.covers.push_back({Ball{}, t, false});
        return d;
    }

    FactoredPoly f_;
    SetSpec S_;
    Prime p_;
    MonoidOptions opt_;
    DenseSet T_;
    std::vector<Poly> H_;
    ValInt fixed_;
};

}  // namespace ivp

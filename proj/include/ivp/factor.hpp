#pragma once

// Canonical factorisation over Q: leading coefficient times monic
// irreducible factors with multiplicities.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ivp/modp.hpp"
#include "ivp/poly.hpp"

namespace ivp {

/// Deterministic order of irreducible factors: by degree, then coefficients
/// lowest-first, each compared by magnitude with positive before negative
/// (so x < x + 1 < x - 1 < x + 2 ...).
inline bool factor_order_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        Rational ca = a.coeff(i);
        Rational cb = b.coeff(i);
        if (ca == cb) continue;
        return magnitude_less(ca, cb);
    }
    return false;
}

struct Factor {
    Poly poly;  ///< monic, irreducible over Q
    unsigned mult = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// c * prod h_i^{m_i} with monic irreducible h_i, sorted by factor_order_less.
/// Constructors only check shape (monic, nonconstant, distinct); irreducibility
/// is established by factor_over_Q or certify_factored.
class FactoredPoly {
public:
    FactoredPoly() : content_(1) {}

    FactoredPoly(Rational content, std::vector<Factor> factors) : content_(std::move(content)), factors_(std::move(factors)) {
        content_.canonicalize();
        if (content_ == 0) throw InputError("factored polynomial with zero content");
        for (const auto& f : factors_) {
            if (f.poly.degree() < 1 || !f.poly.is_monic()) {
                throw InputError("factor is not monic and nonconstant: " + f.poly.to_string());
            }
            if (f.mult == 0) throw InputError("factor multiplicity must be positive");
        }
        std::sort(factors_.begin(), factors_.end(), [](const Factor& a, const Factor& b) { return factor_order_less(a.poly, b.poly); });
        for (std::size_t i = 1; i < factors_.size(); ++i) {
            if (factors_[i].poly == factors_[i - 1].poly) throw InputError("repeated factor " + factors_[i].poly.to_string());
        }
    }

    static FactoredPoly constant(const Rational& c) { return FactoredPoly(c, {}); }

    /// Leading coefficient of the expanded polynomial.
    const Rational& content() const { return content_; }
    const std::vector<Factor>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& f : factors_) d += f.poly.degree() * static_cast<int>(f.mult);
        return d;
    }

    unsigned multiplicity_of(const Poly& h) const {
        for (const auto& f : factors_) {
            if (f.poly == h) return f.mult;
        }
        return 0;
    }

    Poly expand() const {
        Poly r = Poly::constant(content_);
        for (const auto& f : factors_) r *= pow(f.poly, f.mult);
        return r;
    }

    FactoredPoly scaled(const Rational& a) const { return FactoredPoly(content_ * a, factors_); }

    friend FactoredPoly operator*(const FactoredPoly& a, const FactoredPoly& b) {
        std::vector<Factor> fs = a.factors_;
        for (const auto& g : b.factors_) {
            auto it = std::find_if(fs.begin(), fs.end(), [&](const Factor& f) { return f.poly == g.poly; });
            if (it == fs.end()) {
                fs.push_back(g);
            } else {
                it->mult += g.mult;
            }
        }
        return FactoredPoly(a.content_ * b.content_, std::move(fs));
    }

    friend bool operator==(const FactoredPoly&, const FactoredPoly&) = default;

    std::string to_string() const {
        std::string s = ivp::to_string(content_);
        for (const auto& f : factors_) {
            s += " * (" + f.poly.to_string() + ")";
            if (f.mult > 1) s += "^" + std::to_string(f.mult);
        }
        return s;
    }

private:
    Rational content_;
    std::vector<Factor> factors_;
};

inline FactoredPoly pow(const FactoredPoly& f, unsigned e) {
    std::vector<Factor> fs = f.factors();
    for (auto& x : fs) x.mult *= e;
    Rational c(1);
    for (unsigned i = 0; i < e; ++i) c *= f.content();
    if (e == 0) fs.clear();
    return FactoredPoly(c, std::move(fs));
}

/// b / a when a divides b in Q[x].
inline std::optional<FactoredPoly> divide_exact(const FactoredPoly& b, const FactoredPoly& a) {
    std::vector<Factor> fs;
    for (const auto& f : a.factors()) {
        if (b.multiplicity_of(f.poly) < f.mult) return std::nullopt;
    }
    for (const auto& f : b.factors()) {
        unsigned m = f.mult - a.multiplicity_of(f.poly);
        if (m > 0) fs.push_back({f.poly, m});
    }
    return FactoredPoly(b.content() / a.content(), std::move(fs));
}

namespace detail {

using ZPoly = std::vector<Integer>;

inline void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

/// Coefficients reduced into the symmetric range (-m/2, m/2].
inline ZPoly symmetric_mod(const ZPoly& a, const Integer& m) {
    ZPoly r(a.size());
    Integer half = m / 2;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] = mod(a[i], m);
        if (r[i] > half) r[i] -= m;
    }
    trim(r);
    return r;
}

/// Exact division by a monic divisor; nullopt when the remainder is nonzero.
inline std::optional<ZPoly> zdiv_monic(const ZPoly& a, const ZPoly& b) {
    if (a.size() < b.size()) return std::nullopt;
    ZPoly rem = a;
    ZPoly q(a.size() - b.size() + 1, Integer(0));
    for (std::size_t i = a.size(); i-- >= b.size();) {
        Integer c = rem[i];
        q[i - (b.size() - 1)] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) rem[i - (b.size() - 1) + j] -= c * b[j];
    }
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        if (rem[i] != 0) return std::nullopt;
    }
    trim(q);
    return q;
}

inline modp::FpPoly to_fp(const ZPoly& a, const modp::Field& F) {
    modp::FpPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.reduce(a[i]);
    modp::Field::trim(r);
    return r;
}

inline ZPoly from_fp(const modp::FpPoly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
    return r;
}

/// Primitive integer polynomial proportional to f, with positive leading coefficient.
inline ZPoly primitive_integer(const Poly& f) {
    Rational c = poly_content(f);
    if (sgn(f.lead()) < 0) c = -c;
    ZPoly r;
    for (const auto& x : f.coeffs()) {
        Rational y = x / c;
        r.push_back(y.get_num());
    }
    return r;
}

inline Poly to_poly(const ZPoly& a) {
    std::vector<Rational> c;
    for (const auto& x : a) c.emplace_back(x);
    return Poly(std::move(c));
}

/// Smallest odd prime p not dividing lc(g) with g squarefree modulo p.
inline std::uint64_t good_prime(const ZPoly& g, std::uint64_t after = 2) {
    for (std::uint64_t p = after + 1; p < (1ull << 31); ++p) {
        if (!is_prime(Integer(static_cast<unsigned long>(p)))) continue;
        if (p == 2) continue;
        if (mpz_divisible_ui_p(g.back().get_mpz_t(), p)) continue;
        modp::Field F(p);
        if (F.is_squarefree(to_fp(g, F))) return p;
    }
    throw ResourceError("no good prime found");
}

/// Lifts G = prod fs (mod p), all monic, to a factorisation modulo p^k.
inline std::vector<ZPoly> hensel_lift(const ZPoly& G, const std::vector<modp::FpPoly>& fs, const modp::Field& F, unsigned k) {
    Integer pz(static_cast<unsigned long>(F.p()));
    Integer pk = pow(pz, k);
    if (fs.size() == 1) {
        ZPoly r(G.size());
        for (std::size_t i = 0; i < G.size(); ++i) r[i] = mod(G[i], pk);
        return {r};
    }
    std::size_t half = fs.size() / 2;
    std::vector<modp::FpPoly> left(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(half));
    std::vector<modp::FpPoly> right(fs.begin() + static_cast<std::ptrdiff_t>(half), fs.end());
    modp::FpPoly u0{1}, w0{1};
    for (const auto& f : left) u0 = F.mul(u0, f);
    for (const auto& f : right) w0 = F.mul(w0, f);
    auto [g, s, t] = F.xgcd(u0, w0);
    if (g.size() != 1) throw std::logic_error("Hensel lifting: factors not coprime modulo p");
    ZPoly u = from_fp(u0);
    ZPoly w = from_fp(w0);
    Integer pj = pz;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly diff = zsub(G, zmul(u, w));
        for (auto& c : diff) {
            if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t())) throw std::logic_error("Hensel lifting: invariant broken");
            c /= pj;
        }
        modp::FpPoly e = to_fp(diff, F);
        modp::FpPoly du = F.rem(F.mul(e, t), u0);
        modp::FpPoly dw = F.rem(F.mul(e, s), w0);
        ZPoly duz = from_fp(du);
        ZPoly dwz = from_fp(dw);
        for (std::size_t i = 0; i < duz.size(); ++i) u[i] += pj * duz[i];
        for (std::size_t i = 0; i < dwz.size(); ++i) w[i] += pj * dwz[i];
        pj *= pz;
    }
    for (auto& c : u) c = mod(c, pk);
    for (auto& c : w) c = mod(c, pk);
    auto lu = hensel_lift(u, left, F, k);
    auto lw = hensel_lift(w, right, F, k);
    lu.insert(lu.end(), lw.begin(), lw.end());
    return lu;
}

/// Irreducible monic factors of a monic squarefree G in Z[x] (deg >= 2).
/// Exhaustive subset recombination certifies irreducibility of every output.
inline std::vector<ZPoly> zassenhaus(const ZPoly& G, unsigned degree_cap) {
    std::uint64_t p = good_prime(G);
    modp::Field F(p);
    auto modular = F.factor_squarefree(to_fp(G, F));
    if (modular.size() == 1) return {G};
    int n = static_cast<int>(G.size()) - 1;
    if (n > static_cast<int>(degree_cap)) {
        throw ResourceError("factor recombination above degree cap " + std::to_string(degree_cap) + " (degree " + std::to_string(n) + ")");
    }
    // Coefficients of any monic factor are bounded by 2^n * ||G||_2.
    Integer norm2(0);
    for (const auto& c : G) norm2 += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    Integer bound = pow(Integer(2), static_cast<unsigned long>(n)) * (root + 1);
    Integer pz(static_cast<unsigned long>(p));
    unsigned k = 1;
    Integer pk = pz;
    while (pk <= 2 * bound) {
        pk *= pz;
        ++k;
    }
    std::vector<ZPoly> lifted = hensel_lift(G, modular, F, k);

    std::vector<ZPoly> out;
    ZPoly rest = G;
    std::size_t size = 1;
    while (2 * size <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            ZPoly prod{Integer(1)};
            for (auto i : idx) prod = zmul(prod, lifted[i]);
            prod = symmetric_mod(prod, pk);
            if (auto q = zdiv_monic(rest, prod)) {
                out.push_back(prod);
                rest = *q;
                std::vector<ZPoly> keep;
                for (std::size_t i = 0; i < lifted.size(); ++i) {
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(lifted[i]);
                }
                lifted = std::move(keep);
                found = true;
                break;
            }
            // next combination
            std::size_t pos = size;
            while (pos > 0 && idx[pos - 1] == lifted.size() - size + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++size;
    }
    if (rest.size() > 1) out.push_back(rest);
    return out;
}

/// G(y) = a^{n-1} g(y/a): monic integer polynomial for primitive g with lc a.
inline ZPoly monic_transform(const ZPoly& g) {
    std::size_t n = g.size() - 1;
    const Integer& a = g.back();
    ZPoly G(g.size());
    for (std::size_t i = 0; i <= n; ++i) G[i] = i == n ? Integer(1) : g[i] * pow(a, static_cast<unsigned long>(n - 1 - i));
    return G;
}

inline std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    if (n == 0) throw std::logic_error("divisors of zero");
    std::vector<std::pair<Integer, unsigned>> primes;
    for (Integer d = 2; d * d <= n && d < 1000000; ++d) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e) primes.emplace_back(d, e);
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) throw ResourceError("cannot factor coefficient " + n.get_str());
        primes.emplace_back(n, 1);
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [q, e] : primes) {
        std::size_t m = divs.size();
        Integer qq = 1;
        for (unsigned i = 1; i <= e; ++i) {
            qq *= q;
            for (std::size_t j = 0; j < m; ++j) divs.push_back(divs[j] * qq);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

/// Pairwise coprime monic squarefree parts with multiplicities (Yun).
inline std::vector<std::pair<Poly, unsigned>> squarefree_decompose(const Poly& f) {
    if (f.is_zero()) throw InputError("squarefree decomposition of zero");
    std::vector<std::pair<Poly, unsigned>> out;
    if (f.degree() < 1) return out;
    Poly m = f.monic();
    Poly d1 = m.derivative();
    Poly b = gcd(m, d1);
    Poly c = divrem(m, b).first;
    Poly d = divrem(d1, b).first - c.derivative();
    unsigned i = 1;
    while (c.degree() > 0) {
        Poly a = gcd(c, d);
        if (a.degree() > 0) out.emplace_back(a.monic(), i);
        c = divrem(c, a).first;
        d = divrem(d, a).first - c.derivative();
        ++i;
    }
    return out;
}

/// All rational roots, ascending.
inline std::vector<Rational> rational_roots(const Poly& f) {
    if (f.is_zero()) throw InputError("rational roots of zero");
    std::vector<Rational> roots;
    if (f.degree() < 1) return roots;
    detail::ZPoly g = detail::primitive_integer(f);
    std::size_t shift = 0;
    while (g[shift] == 0) ++shift;
    if (shift > 0) roots.emplace_back(0);
    detail::ZPoly h(g.begin() + static_cast<std::ptrdiff_t>(shift), g.end());
    if (h.size() > 1) {
        Poly hp = detail::to_poly(h);
        for (const auto& num : detail::positive_divisors(h.front())) {
            for (const auto& den : detail::positive_divisors(h.back())) {
                if (gcd(num, den) != 1) continue;
                for (int sign : {1, -1}) {
                    Rational r(sign * num, den);
                    r.canonicalize();
                    if (hp(r) == 0) roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct FactorOptions {
    unsigned degree_cap = 12;
};

namespace detail {

/// Irreducible monic factors over Q of a monic squarefree polynomial without
/// rational roots.
inline std::vector<Poly> split_rootless(const Poly& q, const FactorOptions& opt) {
    if (q.degree() <= 3) return {q};
    ZPoly g = primitive_integer(q);
    ZPoly G = monic_transform(g);
    Rational a(g.back());
    std::vector<Poly> out;
    for (const auto& F : zassenhaus(G, opt.degree_cap)) out.push_back(to_poly(F).compose_linear(Rational(0), a).monic());
    return out;
}

}  // namespace detail

/// Content extraction, squarefree decomposition, rational-root splitting, and
/// modular factorisation with Hensel lifting for the remaining parts. The
/// expansion is checked against the input before returning.
inline FactoredPoly factor_over_Q(const Poly& f, const FactorOptions& opt = {}) {
    if (f.is_zero()) throw InputError("cannot factor the zero polynomial");
    std::vector<Factor> fs;
    for (auto [part, e] : squarefree_decompose(f)) {
        Poly rest = part;
        for (const auto& r : rational_roots(part)) {
            Poly lin = Poly::linear_root(r);
            fs.push_back({lin, e});
            rest = divrem(rest, lin).first;
        }
        if (rest.degree() < 1) continue;
        for (auto& h : detail::split_rootless(rest, opt)) fs.push_back({std::move(h), e});
    }
    FactoredPoly out(f.lead(), std::move(fs));
    if (out.expand() != f) throw std::logic_error("factorisation certificate failed for " + f.to_string());
    return out;
}

/// True iff h (nonconstant) is irreducible over Q.
inline bool is_irreducible(const Poly& h, const FactorOptions& opt = {}) {
    if (h.degree() < 1) return false;
    if (h.degree() == 1) return true;
    if (!rational_roots(h).empty()) return false;
    if (h.degree() <= 3) return true;
    if (gcd(h, h.derivative()).degree() > 0) return false;
    return detail::split_rootless(h.monic(), opt).size() == 1;
}

/// Checks a user-supplied factorisation (each factor monic irreducible,
/// pairwise distinct) and returns it in canonical order.
inline FactoredPoly certify_factored(const Rational& content, std::vector<Factor> factors, const FactorOptions& opt = {}) {
    FactoredPoly fp(content, std::move(factors));
    for (const auto& f : fp.factors()) {
        if (!is_irreducible(f.poly, opt)) throw InputError("supplied factor is reducible: " + f.poly.to_string());
    }
    return fp;
}

/// alpha with p^alpha * h in Z_(p)[x] primitive.
inline std::int64_t scaling_exponent(const Poly& h, Prime p) {
    if (h.is_zero()) throw InputError("scaling of the zero polynomial");
    ValInt m = ValInt::infinity();
    for (const auto& c : h.coeffs()) m = std::min(m, vp(c, p));
    return -m.value();
}

/// p^alpha * h with minimum coefficient valuation 0.
inline Poly primitive_scaling(const Poly& h, Prime p) { return h * ppow(p, scaling_exponent(h, p)); }

/// Exponent of the monic irreducible h in g.
inline unsigned multiplicity(const Poly& g, const Poly& h) {
    if (!h.is_monic()) throw InputError("multiplicity: factor is not monic: " + h.to_string());
    if (!is_irreducible(h)) throw InputError("multiplicity: factor is reducible: " + h.to_string());
    return exact_multiplicity(g, h);
}

}  // namespace ivp

#pragma once

// Dense univariate polynomials over Q.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ivp/rational.hpp"

namespace ivp {

/// Polynomial over Q, coefficients lowest degree first, never with a
/// trailing zero coefficient.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { canonical(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { canonical(); }

    static Poly constant(const Rational& a) { return Poly(std::vector<Rational>{a}); }
    static Poly x() { return Poly({Rational(0), Rational(1)}); }
    /// x - a
    static Poly linear_root(const Rational& a) { return Poly({-a, Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
        return c_[static_cast<std::size_t>(i)];
    }
    const Rational& lead() const {
        if (c_.empty()) throw InputError("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly monic() const {
        if (is_zero()) throw InputError("monic part of zero polynomial");
        return *this * (Rational(1) / lead());
    }

    Rational operator()(const Rational& s) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * s + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// q(y) = p(a + b*y).
    Poly compose_linear(const Rational& a, const Rational& b) const {
        Poly lin({a, b});
        Poly acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly::constant(*it);
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<Rational> r(a.c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Rational& k) {
        std::vector<Rational> r(a.c_);
        for (auto& x : r) x *= k;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Rational& k, const Poly& a) { return a * k; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly&, const Poly&) = default;

    std::string to_string() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    void canonical() {
        for (auto& c : c_) c.canonicalize();
        trim();
    }

    std::vector<Rational> c_;
};

inline Poly pow(const Poly& base, unsigned e) {
    Poly r = Poly::constant(1);
    Poly b = base;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

/// a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InputError("division by the zero polynomial");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {Poly(), a};
    std::vector<Rational> q(static_cast<std::size_t>(da - db + 1));
    Rational inv_lead = Rational(1) / b.lead();
    for (int i = da; i >= db; --i) {
        Rational coef = rem[static_cast<std::size_t>(i)] * inv_lead;
        q[static_cast<std::size_t>(i - db)] = coef;
        if (coef == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= coef * b.coeff(j);
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Positive gcd of the coefficients: per prime, the minimum coefficient valuation.
inline Rational poly_content(const Poly& f) {
    if (f.is_zero()) throw InputError("content of the zero polynomial");
    Integer num(0);
    Integer den(1);
    for (const auto& c : f.coeffs()) {
        if (c == 0) continue;
        num = gcd(num, c.get_num());
        den = lcm(den, c.get_den());
    }
    Rational r(abs(num), den);
    r.canonicalize();
    return r;
}

/// Largest e with h^e | g in Q[x]; h must be nonconstant. See factor.hpp for
/// the checked variant requiring h monic irreducible.
inline unsigned exact_multiplicity(Poly g, const Poly& h) {
    if (g.is_zero()) throw InputError("multiplicity in the zero polynomial");
    if (h.degree() < 1) throw InputError("multiplicity of a constant");
    unsigned e = 0;
    for (;;) {
        auto [q, r] = divrem(g, h);
        if (!r.is_zero()) return e;
        g = std::move(q);
        ++e;
    }
}

inline std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::string mag = ivp::to_string(abs(c));
        std::string term;
        if (i == 0) {
            term = mag;
        } else {
            term = (abs(c) == 1 ? "" : mag + "*") + (i == 1 ? std::string("x") : "x^" + std::to_string(i));
        }
        if (out.empty()) {
            out = (sgn(c) < 0 ? "-" : "") + term;
        } else {
            out += (sgn(c) < 0 ? " - " : " + ") + term;
        }
    }
    return out;
}

}  // namespace ivp

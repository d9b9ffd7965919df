#pragma once

// Polynomial arithmetic over F_p (p an odd word-size prime) and
// Cantor-Zassenhaus factorisation of squarefree polynomials.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

#include "ivp/rational.hpp"

namespace ivp::modp {

using Coeff = std::uint64_t;
/// Lowest degree first, no trailing zeros.
using FpPoly = std::vector<Coeff>;

class Field {
public:
    explicit Field(std::uint64_t p) : p_(p) {
        if (p < 3 || p > (1ull << 31)) throw InputError("modular factorisation prime out of range");
    }

    std::uint64_t p() const { return p_; }
    Coeff add(Coeff a, Coeff b) const { return (a + b) % p_; }
    Coeff sub(Coeff a, Coeff b) const { return (a + p_ - b) % p_; }
    Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>((static_cast<unsigned __int128>(a) * b) % p_); }
    Coeff pow(Coeff a, std::uint64_t e) const {
        Coeff r = 1;
        while (e) {
            if (e & 1u) r = mul(r, a);
            a = mul(a, a);
            e >>= 1u;
        }
        return r;
    }
    Coeff inv(Coeff a) const {
        if (a % p_ == 0) throw DomainError("inverse of zero in F_p");
        return pow(a, p_ - 2);
    }

    Coeff reduce(const Integer& x) const {
        Integer pz(static_cast<unsigned long>(p_));
        return mod(x, pz).get_ui();
    }
    Coeff reduce(const Rational& x) const { return mul(reduce(x.get_num()), inv(reduce(x.get_den()))); }

    static void trim(FpPoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    FpPoly add(const FpPoly& a, const FpPoly& b) const {
        FpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        }
        trim(r);
        return r;
    }
    FpPoly sub(const FpPoly& a, const FpPoly& b) const {
        FpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
        }
        trim(r);
        return r;
    }
    FpPoly mul(const FpPoly& a, const FpPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FpPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }
    FpPoly scale(const FpPoly& a, Coeff k) const {
        FpPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], k);
        trim(r);
        return r;
    }

    std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) const {
        if (b.empty()) throw DomainError("division by zero polynomial in F_p[x]");
        if (a.size() < b.size()) return {{}, a};
        FpPoly rem = a;
        FpPoly q(a.size() - b.size() + 1, 0);
        Coeff il = inv(b.back());
        for (std::size_t i = a.size(); i-- >= b.size();) {
            Coeff c = mul(rem[i], il);
            q[i - (b.size() - 1)] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                auto idx = i - (b.size() - 1) + j;
                rem[idx] = sub(rem[idx], mul(c, b[j]));
            }
        }
        rem.resize(b.size() - 1);
        trim(rem);
        trim(q);
        return {q, rem};
    }
    FpPoly rem(const FpPoly& a, const FpPoly& b) const { return divrem(a, b).second; }

    FpPoly monic(const FpPoly& a) const { return a.empty() ? a : scale(a, inv(a.back())); }

    FpPoly gcd(FpPoly a, FpPoly b) const {
        while (!b.empty()) {
            FpPoly r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    /// (g, s, t) with s*a + t*b = g monic.
    std::tuple<FpPoly, FpPoly, FpPoly> xgcd(FpPoly a, FpPoly b) const {
        FpPoly s0{1}, s1{}, t0{}, t1{1};
        while (!b.empty()) {
            auto [q, r] = divrem(a, b);
            a = std::move(b);
            b = std::move(r);
            FpPoly s2 = sub(s0, mul(q, s1));
            FpPoly t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        Coeff il = inv(a.back());
        return {scale(a, il), scale(s0, il), scale(t0, il)};
    }

    FpPoly derivative(const FpPoly& a) const {
        FpPoly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], static_cast<Coeff>(i % p_)));
        trim(d);
        return d;
    }

    /// base^e mod m, exponent given as a big integer.
    FpPoly powmod(FpPoly base, const Integer& e, const FpPoly& m) const {
        FpPoly r{1};
        r = rem(r, m);
        base = rem(base, m);
        std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = rem(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base), m);
        }
        return r;
    }

    Coeff eval(const FpPoly& a, Coeff y) const {
        Coeff acc = 0;
        for (std::size_t i = a.size(); i-- > 0;) acc = add(mul(acc, y), a[i]);
        return acc;
    }

    bool is_squarefree(const FpPoly& a) const {
        FpPoly d = derivative(a);
        if (d.empty()) return false;
        return gcd(a, d).size() == 1;
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial:
    /// (product of all irreducible factors of degree d, d).
    std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f) const {
        std::vector<std::pair<FpPoly, int>> out;
        FpPoly x{0, 1};
        FpPoly h = x;
        Integer pz(static_cast<unsigned long>(p_));
        for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
            h = powmod(h, pz, f);
            FpPoly g = gcd(f, sub(h, x));
            if (g.size() > 1) {
                out.emplace_back(g, d);
                f = divrem(f, g).first;
                h = rem(h, f);
            }
        }
        if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
        return out;
    }

    /// Splits a monic product of irreducibles all of degree d.
    void equal_degree(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) const {
        int n = static_cast<int>(f.size()) - 1;
        if (n == d) {
            out.push_back(f);
            return;
        }
        Integer pz(static_cast<unsigned long>(p_));
        Integer e = (ivp::pow(pz, static_cast<unsigned long>(d)) - 1) / 2;
        std::uniform_int_distribution<Coeff> dist(0, p_ - 1);
        for (;;) {
            FpPoly a(static_cast<std::size_t>(n));
            for (auto& c : a) c = dist(rng);
            trim(a);
            if (a.size() < 2) continue;
            FpPoly b = sub(powmod(a, e, f), FpPoly{1});
            FpPoly g = gcd(f, b);
            if (g.size() > 1 && g.size() < f.size()) {
                equal_degree(g, d, rng, out);
                equal_degree(divrem(f, g).first, d, rng, out);
                return;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    std::vector<FpPoly> factor_squarefree(const FpPoly& f) const {
        std::mt19937_64 rng(0x5eed + p_);
        std::vector<FpPoly> out;
        for (auto& [g, d] : distinct_degree(f)) equal_degree(g, d, rng, out);
        std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        });
        return out;
    }

private:
    std::uint64_t p_;
};

}  // namespace ivp::modp

#pragma once

// Exact integers, rationals, primes and p-adic valuations.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ivp/error.hpp"

namespace ivp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Deterministic trial division; intended for desk-scale primes.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (Integer d = 3; d * d <= n; d += 2) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
}

/// A validated prime. Construction is the only place primality is checked.
class Prime {
public:
    explicit Prime(std::uint64_t p) : value_(p) {
        if (!is_prime(Integer(static_cast<unsigned long>(p)))) {
            throw InputError("not a prime: " + std::to_string(p));
        }
    }

    std::uint64_t value() const { return value_; }
    Integer as_integer() const { return Integer(static_cast<unsigned long>(value_)); }

    friend bool operator==(Prime, Prime) = default;
    friend auto operator<=>(Prime, Prime) = default;

private:
    std::uint64_t value_;
};

/// Integer valuation value or +infinity.
class ValInt {
public:
    constexpr ValInt() = default;
    constexpr ValInt(std::int64_t v) : value_(v) {}  // NOLINT: implicit from finite values

    static constexpr ValInt infinity() {
        ValInt v;
        v.inf_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_finite() const { return !inf_; }

    std::int64_t value() const {
        if (inf_) throw DomainError("valuation is +infinity");
        return value_;
    }

    friend constexpr ValInt operator+(ValInt a, ValInt b) {
        if (a.inf_ || b.inf_) return infinity();
        return ValInt(a.value_ + b.value_);
    }
    ValInt& operator+=(ValInt o) { return *this = *this + o; }

    /// Scaling by a non-negative count; 0 * infinity is 0 (an absent factor).
    friend constexpr ValInt scale(std::int64_t k, ValInt v) {
        if (k == 0) return ValInt(0);
        if (v.inf_) return infinity();
        return ValInt(k * v.value_);
    }

    friend constexpr bool operator==(ValInt a, ValInt b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(ValInt a, ValInt b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        return a.value_ <=> b.value_;
    }

    std::string to_string() const { return inf_ ? "inf" : std::to_string(value_); }
    friend std::ostream& operator<<(std::ostream& os, ValInt v) { return os << v.to_string(); }

private:
    std::int64_t value_ = 0;
    bool inf_ = false;
};

/// Exponent of p in a nonzero integer, +inf for zero.
inline ValInt vp(const Integer& x, Prime p) {
    if (x == 0) return ValInt::infinity();
    Integer rest;
    Integer pz = p.as_integer();
    auto e = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
    return ValInt(static_cast<std::int64_t>(e));
}

/// Exponent of p in x (negative for denominators), +inf for zero.
inline ValInt vp(const Rational& x, Prime p) {
    if (x == 0) return ValInt::infinity();
    return ValInt(vp(x.get_num(), p).value() - vp(x.get_den(), p).value());
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow(Prime p, unsigned long e) { return pow(p.as_integer(), e); }

/// p^e for any integer e, as a rational.
inline Rational ppow(Prime p, std::int64_t e) {
    if (e >= 0) return Rational(pow(p, static_cast<unsigned long>(e)));
    return Rational(Integer(1), pow(p, static_cast<unsigned long>(-e)));
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Non-negative remainder.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Canonical representative in [0, m) of x in Z_(p) modulo m = p^k.
/// The denominator of x must be invertible modulo m.
inline Integer reduce_mod(const Rational& x, const Integer& m) {
    if (x.get_den() == 1) return mod(x.get_num(), m);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t()) == 0) {
        throw DomainError("denominator not invertible modulo " + m.get_str());
    }
    return mod(x.get_num() * inv, m);
}

inline Rational parse_rational(std::string_view text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) throw InputError("empty rational literal");
    std::string s(text.substr(first, last - first + 1));
    Rational r;
    auto slash = s.find('/');
    auto bad = [&] { return InputError("malformed rational: '" + s + "'"); };
    Integer num;
    Integer den(1);
    auto parse_int = [&](const std::string& part, Integer& out) {
        if (part.empty() || part == "-" || part == "+") throw bad();
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') throw bad();
        }
        out.set_str(part[0] == '+' ? part.substr(1) : part, 10);
    };
    if (slash == std::string::npos) {
        parse_int(s, num);
    } else {
        parse_int(s.substr(0, slash), num);
        parse_int(s.substr(slash + 1), den);
        if (den == 0) throw InputError("zero denominator: '" + s + "'");
    }
    r = Rational(num, den);
    r.canonicalize();
    return r;
}

/// "num/den", with the denominator omitted when it is 1.
inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Ordering used for deterministic choices: smaller |x| first, then positive
/// before negative.
inline bool magnitude_less(const Rational& a, const Rational& b) {
    int c = cmp(abs(a), abs(b));
    if (c != 0) return c < 0;
    return sgn(a) > sgn(b);
}

/// Distinct prime factors of |n| (n != 0), ascending. Trial division up to
/// 10^6; a larger cofactor must be a probable prime.
inline std::vector<Integer> prime_factors(Integer n) {
    n = abs(n);
    if (n == 0) throw DomainError("prime factors of zero");
    std::vector<Integer> out;
    for (Integer d = 2; d * d <= n && d < 1000000; ++d) {
        if (!mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) continue;
        out.push_back(d);
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) n /= d;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) throw ResourceError("cannot factor " + n.get_str());
        out.push_back(n);
    }
    return out;
}

inline std::int64_t to_int64(const Integer& x) {
    if (!x.fits_slong_p()) throw ResourceError("integer exceeds 64 bits: " + x.get_str());
    return x.get_si();
}

}  // namespace ivp

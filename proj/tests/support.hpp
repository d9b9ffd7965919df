#pragma once

#include <string>

#include "ivp/divisor_hom.hpp"

namespace ivp::testing {

inline Rational Q(const std::string& s) { return parse_rational(s); }

/// Coefficients lowest degree first, e.g. P({"0", "-1", "1"}) = x^2 - x.
inline Poly P(std::initializer_list<const char*> cs) {
    std::vector<Rational> v;
    for (const auto* c : cs) v.push_back(parse_rational(c));
    return Poly(std::move(v));
}

inline const Poly X = Poly{Rational(0), Rational(1)};

inline Poly C(const Rational& c) { return Poly{c}; }

inline FactoredPoly F(const Poly& p) { return factor_over_Q(p); }

inline ValVector V(std::initializer_list<long> xs) {
    ValVector v;
    for (long x : xs) v.push_back(x < 0 ? ValInt::infinity() : ValInt(x));
    return v;
}

}  // namespace ivp::testing

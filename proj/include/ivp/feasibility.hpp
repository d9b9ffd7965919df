#pragma once

// Exact rational Fourier-Motzkin elimination and the dominance-region test
// built on it.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ivp/rational.hpp"

namespace ivp {

/// a . x >= b
struct Inequality {
    std::vector<Rational> a;
    Rational b;
};

namespace detail {

inline void normalize(Inequality& q) {
    Rational scale(0);
    for (const auto& c : q.a) {
        if (c != 0) {
            scale = abs(c);
            break;
        }
    }
    if (scale == 0) return;
    for (auto& c : q.a) c /= scale;
    q.b /= scale;
}

inline bool same_row(const Inequality& x, const Inequality& y) { return x.b == y.b && x.a == y.a; }

inline std::optional<std::vector<Rational>> fm_solve(std::vector<Inequality> rows, std::size_t n) {
    // Drop trivial rows and detect contradictions.
    std::vector<Inequality> kept;
    for (auto& r : rows) {
        bool zero = std::all_of(r.a.begin(), r.a.end(), [](const Rational& c) { return c == 0; });
        if (zero) {
            if (r.b > 0) return std::nullopt;
            continue;
        }
        normalize(r);
        if (std::none_of(kept.begin(), kept.end(), [&](const Inequality& k) { return same_row(k, r); })) kept.push_back(std::move(r));
    }
    if (n == 0) return std::vector<Rational>{};

    // Eliminate the variable with the fewest generated rows.
    std::size_t best = 0;
    std::size_t best_cost = SIZE_MAX;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t pos = 0, neg = 0;
        for (const auto& r : kept) {
            if (r.a[v] > 0) ++pos;
            if (r.a[v] < 0) ++neg;
        }
        if (pos * neg < best_cost) {
            best_cost = pos * neg;
            best = v;
        }
    }
    std::vector<Inequality> lower, upper, next;
    auto drop = [&](const Inequality& r) {
        Inequality q;
        for (std::size_t i = 0; i < n; ++i) {
            if (i != best) q.a.push_back(r.a[i]);
        }
        q.b = r.b;
        return q;
    };
    for (const auto& r : kept) {
        if (r.a[best] > 0) {
            lower.push_back(r);
        } else if (r.a[best] < 0) {
            upper.push_back(r);
        } else {
            next.push_back(drop(r));
        }
    }
    for (const auto& lo : lower) {
        for (const auto& up : upper) {
            // lo.a[best] > 0, up.a[best] < 0: combine to cancel the variable.
            Rational cl = -up.a[best];
            Rational cu = lo.a[best];
            Inequality q;
            q.a.resize(n);
            for (std::size_t i = 0; i < n; ++i) q.a[i] = cl * lo.a[i] + cu * up.a[i];
            q.b = cl * lo.b + cu * up.b;
            next.push_back(drop(q));
        }
    }
    auto sub = fm_solve(std::move(next), n - 1);
    if (!sub) return std::nullopt;

    // Back-substitute: pick the value of the eliminated variable.
    std::vector<Rational> x(n);
    for (std::size_t i = 0, j = 0; i < n; ++i) {
        if (i != best) x[i] = (*sub)[j++];
    }
    auto rest = [&](const Inequality& r) {
        Rational s(0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i != best) s += r.a[i] * x[i];
        }
        return s;
    };
    std::optional<Rational> lo_bound, up_bound;
    for (const auto& r : lower) {
        Rational v = (r.b - rest(r)) / r.a[best];
        if (!lo_bound || v > *lo_bound) lo_bound = v;
    }
    for (const auto& r : upper) {
        Rational v = (r.b - rest(r)) / r.a[best];
        if (!up_bound || v < *up_bound) up_bound = v;
    }
    if (lo_bound && up_bound && *lo_bound > *up_bound) throw std::logic_error("Fourier-Motzkin back-substitution inconsistent");
    if (lo_bound) {
        x[best] = *lo_bound;
    } else if (up_bound) {
        x[best] = std::min(*up_bound, Rational(0));
    } else {
        x[best] = 0;
    }
    return x;
}

}  // namespace detail

/// A point satisfying every row, or nullopt when the system is infeasible.
inline std::optional<std::vector<Rational>> solve_inequalities(const std::vector<Inequality>& rows, std::size_t n) {
    for (const auto& r : rows) {
        if (r.a.size() != n) throw std::invalid_argument("inequality of wrong width");
    }
    auto x = detail::fm_solve(rows, n);
    if (x) {
        for (const auto& r : rows) {
            Rational s(0);
            for (std::size_t i = 0; i < n; ++i) s += r.a[i] * (*x)[i];
            if (s < r.b) throw std::logic_error("Fourier-Motzkin solution fails verification");
        }
    }
    return x;
}

/// Outcome of testing x against conv(ys) + the nonnegative orthant.
struct DominanceResult {
    bool inside = false;
    /// Convex weights per input vector (zero for unused ones) when inside.
    std::vector<Rational> lambda;
    /// Integer exponent vector m >= 0 with <m, y> > <m, x> for every y when outside.
    std::vector<Integer> separator;
};

/// Decides whether x lies in conv(ys) + R_{>=0}^k. A +inf coordinate of x
/// imposes nothing; a y with +inf where x is finite cannot contribute.
inline DominanceResult dominance_test(const std::vector<ValInt>& x, const std::vector<std::vector<ValInt>>& ys) {
    std::size_t k = x.size();
    for (const auto& y : ys) {
        if (y.size() != k) throw std::invalid_argument("vector width mismatch");
    }
    DominanceResult res;
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < k; ++j) {
        if (x[j].is_finite()) J.push_back(j);
    }
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (std::all_of(J.begin(), J.end(), [&](std::size_t j) { return ys[i][j].is_finite(); })) usable.push_back(i);
    }
    auto outside_with = [&](std::vector<Integer> m) {
        res.inside = false;
        res.separator = std::move(m);
        return res;
    };
    if (usable.empty()) {
        std::vector<Integer> m(k, Integer(0));
        if (!ys.empty()) {
            for (auto j : J) m[j] = 1;
        }
        return outside_with(m);
    }
    res.lambda.assign(ys.size(), Rational(0));

    // Componentwise domination.
    for (auto i : usable) {
        if (std::all_of(J.begin(), J.end(), [&](std::size_t j) { return ys[i][j] <= x[j]; })) {
            res.inside = true;
            res.lambda[i] = 1;
            return res;
        }
    }
    if (J.empty()) {
        res.inside = true;
        res.lambda[usable.front()] = 1;
        return res;
    }

    // Separator: m >= 0 on J with sum_j m_j (y_j - x_j) >= 1 for every usable y.
    std::vector<Inequality> sep_rows;
    for (auto i : usable) {
        Inequality q;
        for (auto j : J) q.a.emplace_back(ys[i][j].value() - x[j].value());
        q.b = 1;
        sep_rows.push_back(std::move(q));
    }
    for (std::size_t j = 0; j < J.size(); ++j) {
        Inequality q;
        q.a.assign(J.size(), Rational(0));
        q.a[j] = 1;
        q.b = 0;
        sep_rows.push_back(std::move(q));
    }
    auto m = solve_inequalities(sep_rows, J.size());

    if (!m) {
        // Weights: by Caratheodory at most |J| + 1 vectors are needed, and a
        // dominated vector can replace any vector above it.
        std::vector<std::size_t> cand;
        for (auto i : usable) {
            bool redundant = std::any_of(usable.begin(), usable.end(), [&](std::size_t o) {
                if (o == i) return false;
                bool le = true, eq = true;
                for (auto j : J) {
                    if (ys[o][j] > ys[i][j]) le = false;
                    if (ys[o][j] != ys[i][j]) eq = false;
                }
                return le && (!eq || o < i);
            });
            if (!redundant) cand.push_back(i);
        }
        std::size_t max_k = std::min(cand.size(), J.size() + 1);
        for (std::size_t sz = 1; sz <= max_k; ++sz) {
            std::vector<std::size_t> idx(sz);
            for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
            for (;;) {
                std::vector<Inequality> rows;
                for (std::size_t i = 0; i < sz; ++i) {
                    Inequality q;
                    q.a.assign(sz, Rational(0));
                    q.a[i] = 1;
                    q.b = 0;
                    rows.push_back(std::move(q));
                }
                rows.push_back({std::vector<Rational>(sz, Rational(1)), Rational(1)});
                rows.push_back({std::vector<Rational>(sz, Rational(-1)), Rational(-1)});
                for (auto j : J) {
                    Inequality q;
                    for (auto i : idx) q.a.emplace_back(-ys[cand[i]][j].value());
                    q.b = -x[j].value();
                    rows.push_back(std::move(q));
                }
                if (auto lam = solve_inequalities(rows, sz)) {
                    res.inside = true;
                    for (std::size_t i = 0; i < sz; ++i) res.lambda[cand[idx[i]]] = (*lam)[i];
                    return res;
                }
                std::size_t pos = sz;
                while (pos > 0 && idx[pos - 1] == cand.size() - sz + pos - 1) --pos;
                if (pos == 0) break;
                ++idx[pos - 1];
                for (std::size_t i = pos; i < sz; ++i) idx[i] = idx[i - 1] + 1;
            }
        }
        throw std::logic_error("dominance test: no separator and no convex weights");
    }

    if (usable.size() < ys.size()) {
        // Make m positive on all of J so vectors with +inf there are separated too.
        Rational spread(1);
        for (auto i : usable) {
            Rational s(0);
            for (auto j : J) s += abs(Rational(ys[i][j].value() - x[j].value()));
            spread = std::max(spread, s);
        }
        Rational delta = Rational(1) / (2 * spread);
        for (auto& v : *m) v = 2 * (v + delta);
    }
    Integer den(1);
    for (const auto& v : *m) den = lcm(den, v.get_den());
    std::vector<Integer> sep(k, Integer(0));
    for (std::size_t j = 0; j < J.size(); ++j) {
        Rational v = (*m)[j] * den;
        sep[J[j]] = v.get_num();
    }
    return outside_with(sep);
}

}  // namespace ivp

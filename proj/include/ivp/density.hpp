#pragma once

// Valuation vectors, finite dense subsets via the ball-tree covering, the
// brute-force minimal-vector oracle, relative closure and density tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "ivp/factor.hpp"
#include "ivp/feasibility.hpp"
#include "ivp/modp.hpp"
#include "ivp/set_model.hpp"

namespace ivp {

using ValVector = std::vector<ValInt>;

/// Componentwise a <= b.
inline bool dominated_by(const ValVector& a, const ValVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

/// Minimal elements under the componentwise order, sorted and deduplicated.
inline std::vector<ValVector> minimal_elements(std::vector<ValVector> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<ValVector> out;
    for (const auto& v : vs) {
        bool dominated = std::any_of(vs.begin(), vs.end(), [&](const ValVector& w) { return w != v && dominated_by(w, v); });
        if (!dominated) out.push_back(v);
    }
    return out;
}

/// sum_h m_h * v_h with 0 * inf = 0.
inline ValInt functional_value(const std::vector<unsigned>& m, const ValVector& v) {
    if (m.size() != v.size()) throw InputError("exponent vector has wrong length");
    ValInt s(0);
    for (std::size_t i = 0; i < v.size(); ++i) s += scale(m[i], v[i]);
    return s;
}

inline std::vector<Poly> scaled_factors(const std::vector<Poly>& H, Prime p) {
    std::vector<Poly> out;
    for (const auto& h : H) out.push_back(primitive_scaling(h, p));
    return out;
}

/// (vp(sigma_h(s)))_h for already p-primitive sigma_h.
inline ValVector val_vector_scaled(const Rational& s, const std::vector<Poly>& sigma, Prime p) {
    if (vp(s, p) < ValInt(0)) throw InputError("point " + to_string(s) + " is not " + std::to_string(p.value()) + "-integral");
    ValVector v;
    for (const auto& g : sigma) v.push_back(vp(g(s), p));
    return v;
}

inline ValVector val_vector(const Rational& s, const std::vector<Poly>& H, Prime p) { return val_vector_scaled(s, scaled_factors(H, p), p); }

/// vp(f(s)) from the roots of f: v(c) + sum over roots a of v(s - a), using
/// v(a) for roots outside Z_(p). Cross-checked against direct evaluation.
inline ValInt value_by_roots(const FactoredPoly& f, const Rational& s, Prime p) {
    if (vp(s, p) < ValInt(0)) throw InputError("point " + to_string(s) + " is not " + std::to_string(p.value()) + "-integral");
    ValInt total = vp(f.content(), p);
    for (const auto& fac : f.factors()) {
        if (fac.poly.degree() != 1) throw InputError("unsupported factor (irrational roots): " + fac.poly.to_string());
        Rational a = -fac.poly.coeff(0);
        ValInt w = vp(a, p) < ValInt(0) ? vp(a, p) : vp(s - a, p);
        total += scale(fac.mult, w);
    }
    ValInt direct = vp(f.expand()(s), p);
    if (direct != total) throw std::logic_error("root decomposition disagrees with direct evaluation at " + to_string(s));
    return total;
}

enum class DenseMode { Exact, Tracked };

inline const char* to_string(DenseMode m) { return m == DenseMode::Exact ? "exact" : "tracked"; }

struct DenseOptions {
    unsigned depth_bound = 64;
};

/// One leaf of the covering: every point of S in `ball` is dominated by `point`.
struct CoverRecord {
    Ball ball;
    Rational point;
    bool singleton = false;
};

struct DenseSet {
    Prime prime;
    std::vector<Poly> factors;
    std::vector<Poly> scaled;
    std::vector<Rational> points;
    std::vector<ValVector> vectors;
    DenseMode mode = DenseMode::Exact;
    unsigned depth_bound = 64;
    std::vector<CoverRecord> covers;
    /// Points of S that are roots of some factor and isolated in S.
    std::vector<Rational> isolated_roots;

    ValInt min_functional(const std::vector<unsigned>& m) const {
        ValInt best = ValInt::infinity();
        for (const auto& v : vectors) best = std::min(best, functional_value(m, v));
        return best;
    }

    std::vector<ValVector> minimal_vectors() const { return minimal_elements(vectors); }
};

namespace detail {

/// Zeros in F_p of a polynomial given by integer coefficients.
struct ZeroSet {
    bool all = false;
    std::vector<Integer> roots;
};

inline ZeroSet zeros_mod_p(const std::vector<Integer>& r, Prime p) {
    ZeroSet z;
    Integer pz = p.as_integer();
    auto eval = [&](const Integer& y) {
        Integer acc(0);
        for (std::size_t i = r.size(); i-- > 0;) acc = mod(acc * y + r[i], pz);
        return acc;
    };
    int deg = static_cast<int>(r.size()) - 1;
    while (deg >= 0 && mod(r[static_cast<std::size_t>(deg)], pz) == 0) --deg;
    if (deg < 0) throw std::logic_error("residue polynomial vanishes identically");
    if (deg == 0) return z;
    if (p.value() < 4096) {
        for (std::uint64_t y = 0; y < p.value(); ++y) {
            Integer yz(static_cast<unsigned long>(y));
            if (eval(yz) == 0) z.roots.push_back(yz);
        }
        z.all = z.roots.size() == p.value();
        return z;
    }
    if (p.value() > (1ull << 31)) throw ResourceError("prime too large for residue root finding");
    // deg < p here, so the zero set is never all of F_p.
    modp::Field F(p.value());
    modp::FpPoly f;
    for (int i = 0; i <= deg; ++i) f.push_back(F.reduce(r[static_cast<std::size_t>(i)]));
    f = F.monic(f);
    modp::FpPoly xp = F.powmod(modp::FpPoly{0, 1}, pz, f);
    modp::FpPoly g = F.gcd(f, F.sub(xp, modp::FpPoly{0, 1}));
    if (g.size() <= 1) return z;
    std::mt19937_64 rng(0x5eed + p.value());
    std::vector<modp::FpPoly> lin;
    F.equal_degree(g, 1, rng, lin);
    for (const auto& l : lin) z.roots.emplace_back(static_cast<unsigned long>(F.sub(0, l[0])));
    std::sort(z.roots.begin(), z.roots.end());
    return z;
}

/// Taylor data of sigma on a ball: minimal coefficient valuation of
/// sigma(c + p^n y) and the zeros of the normalised residue polynomial.
struct BallShape {
    std::int64_t mu = 0;
    ZeroSet zeros;
};

inline BallShape ball_shape(const Poly& sigma, const Ball& b, Prime p) {
    Poly G = sigma.compose_linear(Rational(b.center), Rational(b.modulus(p)));
    ValInt mu = ValInt::infinity();
    for (const auto& c : G.coeffs()) mu = std::min(mu, vp(c, p));
    BallShape s;
    s.mu = mu.value();
    Rational unit = ppow(p, -s.mu);
    std::vector<Integer> r;
    for (const auto& c : G.coeffs()) r.push_back(reduce_mod(c * unit, p.as_integer()));
    s.zeros = zeros_mod_p(r, p);
    return s;
}

struct BallStat {
    ValInt min;
    bool constant = false;
};

/// Minimum of vp(sigma) over the ball and whether it is constant there.
inline BallStat ball_stat(const Poly& sigma, const Ball& b, Prime p, unsigned budget) {
    BallShape s = ball_shape(sigma, b, p);
    if (s.zeros.roots.empty()) return {ValInt(s.mu), true};
    if (!s.zeros.all) return {ValInt(s.mu), false};
    if (budget == 0) throw ResourceError("depth bound reached while resolving valuations on a ball");
    BallStat out{ValInt::infinity(), true};
    bool first = true;
    for (std::uint64_t y = 0; y < p.value(); ++y) {
        BallStat c = ball_stat(sigma, b.child(Integer(static_cast<unsigned long>(y)), p), p, budget - 1);
        if (!first && (!c.constant || c.min != out.min)) out.constant = false;
        if (!c.constant) out.constant = false;
        out.min = std::min(out.min, c.min);
        first = false;
    }
    return out;
}

}  // namespace detail

/// Finite T in S with min_T <m, v> = min_S <m, v> for every m >= 0, where v
/// is the valuation vector of the p-primitive scalings of H.
///
/// Balls of depth n are refined level by level. A child ball is good when
/// every factor has constant valuation on it equal to its minimum over the
/// parent; one point of S in the first good child then dominates the whole
/// parent. Without a good child, every child meeting S is refined.
inline DenseSet dense_set(const SetSpec& S, const std::vector<Poly>& H, Prime p, const DenseOptions& opt = {}) {
    if (H.empty()) throw InputError("dense set needs a nonempty factor set");
    for (const auto& h : H) {
        if (h.degree() < 1 || !h.is_monic()) throw InputError("factor is not monic nonconstant: " + h.to_string());
    }
    S.check_local(p);
    DenseSet ds{p, H, scaled_factors(H, p), {}, {}, DenseMode::Exact, opt.depth_bound, {}, {}};
    bool all_linear = std::all_of(H.begin(), H.end(), [](const Poly& h) { return h.degree() == 1; });
    ds.mode = all_linear ? DenseMode::Exact : DenseMode::Tracked;

    unsigned limit = opt.depth_bound;
    if (all_linear) {
        // Exact mode: refinement stops once the roots are separated.
        std::vector<Rational> roots;
        for (const auto& h : H) {
            Rational a = -h.coeff(0);
            if (vp(a, p) >= ValInt(0)) roots.push_back(a);
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
                limit = std::max<unsigned>(limit, static_cast<unsigned>(vp(roots[i] - roots[j], p).value()) + 2);
            }
        }
    }

    auto is_root = [&](const Rational& s) {
        return std::any_of(ds.scaled.begin(), ds.scaled.end(), [&](const Poly& g) { return g(s) == 0; });
    };

    std::vector<std::pair<Rational, CoverRecord>> found;
    std::vector<Ball> level;
    if (S.meets(Ball{}, p)) level.push_back(Ball{});
    while (!level.empty()) {
        std::vector<Ball> next;
        for (const auto& C : level) {
            if (S.kind() == SetSpec::Kind::Finite) {
                auto members = S.members_in(C, p);
                if (members.size() == 1) {
                    found.push_back({members[0], CoverRecord{C, members[0], true}});
                    if (is_root(members[0])) ds.isolated_roots.push_back(members[0]);
                    continue;
                }
            }
            unsigned budget = limit > C.depth ? limit - C.depth : 0;
            std::vector<detail::BallShape> shapes;
            std::vector<std::vector<detail::BallStat>> child_stats(H.size());
            std::vector<ValInt> parent_min(H.size());
            for (std::size_t h = 0; h < H.size(); ++h) {
                shapes.push_back(detail::ball_shape(ds.scaled[h], C, p));
                if (!shapes[h].zeros.all) continue;
                if (budget == 0) throw ResourceError("depth bound " + std::to_string(limit) + " reached");
                parent_min[h] = ValInt::infinity();
                for (std::uint64_t y = 0; y < p.value(); ++y) {
                    child_stats[h].push_back(detail::ball_stat(ds.scaled[h], C.child(Integer(static_cast<unsigned long>(y)), p), p, budget - 1));
                    parent_min[h] = std::min(parent_min[h], child_stats[h].back().min);
                }
            }
            auto good = [&](const Integer& y) {
                for (std::size_t h = 0; h < H.size(); ++h) {
                    const auto& z = shapes[h].zeros;
                    if (z.all) {
                        const auto& st = child_stats[h][y.get_ui()];
                        if (!st.constant || st.min != parent_min[h]) return false;
                    } else if (std::binary_search(z.roots.begin(), z.roots.end(), y)) {
                        return false;
                    }
                }
                return true;
            };
            auto relevant = S.relevant_children(C, p);
            std::optional<Integer> chosen;
            if (relevant) {
                for (const auto& y : *relevant) {
                    if (good(y)) {
                        chosen = y;
                        break;
                    }
                }
            } else {
                for (Integer y = 0; y < p.as_integer(); ++y) {
                    if (good(y)) {
                        chosen = y;
                        break;
                    }
                }
            }
            if (chosen) {
                Ball D = C.child(*chosen, p);
                Rational t = S.pick_representative(D, p);
                found.push_back({t, CoverRecord{C, t, false}});
                continue;
            }
            if (C.depth + 1 > limit) throw ResourceError("depth bound " + std::to_string(limit) + " reached before all balls resolved");
            if (relevant) {
                for (const auto& y : *relevant) next.push_back(C.child(y, p));
            } else {
                if (p.value() > 1000000) throw ResourceError("too many child balls to refine");
                for (std::uint64_t y = 0; y < p.value(); ++y) next.push_back(C.child(Integer(static_cast<unsigned long>(y)), p));
            }
        }
        std::sort(next.begin(), next.end(), [](const Ball& a, const Ball& b) { return a.center < b.center; });
        level = std::move(next);
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [t, rec] : found) {
        ds.points.push_back(t);
        ds.vectors.push_back(val_vector_scaled(t, ds.scaled, p));
        ds.covers.push_back(std::move(rec));
    }
    std::sort(ds.isolated_roots.begin(), ds.isolated_roots.end());
    return ds;
}

/// min over S of sum_h m_h vp(sigma_h(s)), read off a dense set.
inline ValInt min_functional(const SetSpec& S, const std::vector<Poly>& H, Prime p, const std::vector<unsigned>& m, const DenseOptions& opt = {}) {
    return dense_set(S, H, p, opt).min_functional(m);
}

namespace detail {

template <std::uint64_t P>
inline unsigned vp_u64(std::uint64_t x) {
    if constexpr (P == 2) {
        return static_cast<unsigned>(__builtin_ctzll(x));
    } else {
        unsigned e = 0;
        while (x % P == 0) {
            x /= P;
            ++e;
        }
        return e;
    }
}

inline unsigned vp_u64_rt(std::uint64_t x, std::uint64_t p) {
    unsigned e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

/// Linear factor x - u/v in machine words: vp(sigma(s)) = shift + vp(v*s - u).
struct LinearWord {
    std::int64_t u = 0;
    std::int64_t v = 1;
    std::int64_t shift = 0;
};

constexpr unsigned kInfCode = 63;

template <std::uint64_t P>
inline std::uint64_t encode(std::int64_t s, const std::vector<LinearWord>& lw, std::uint64_t prt) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        __int128 w = static_cast<__int128>(lw[i].v) * s - lw[i].u;
        std::uint64_t code;
        if (w == 0) {
            code = kInfCode;
        } else {
            auto a = static_cast<std::uint64_t>(w < 0 ? -w : w);
            unsigned e = P ? vp_u64<P>(a) : vp_u64_rt(a, prt);
            code = static_cast<std::uint64_t>(static_cast<std::int64_t>(e) + lw[i].shift);
        }
        key |= code << (6 * i);
    }
    return key;
}

template <std::uint64_t P>
inline void scan_words(std::int64_t lo, std::int64_t hi, std::int64_t step, const std::vector<LinearWord>& lw, std::uint64_t prt, std::unordered_set<std::uint64_t>& seen) {
    constexpr std::size_t kCache = 4096;
    std::array<std::uint64_t, kCache> cache;
    cache.fill(~0ull);
    for (std::int64_t s = lo; s <= hi; s += step) {
        std::uint64_t key = encode<P>(s, lw, prt);
        std::size_t slot = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> 52);
        if (cache[slot] == key) continue;
        cache[slot] = key;
        seen.insert(key);
    }
}

}  // namespace detail

/// Minimal valuation vectors over every point of S with |s| <= radius: the
/// brute-force check for dense_set.
inline std::vector<ValVector> minimal_vectors_oracle(const SetSpec& S, const std::vector<Poly>& H, Prime p, const Integer& radius) {
    Integer pz = p.as_integer();
    if (radius < pz * pz) throw PreconditionError("oracle radius must be at least p^2");
    S.check_local(p);
    std::vector<Poly> sigma = scaled_factors(H, p);
    std::vector<ValVector> all;

    if (S.kind() == SetSpec::Kind::Finite) {
        for (const auto& e : S.elements()) {
            if (abs(e) <= Rational(radius)) all.push_back(val_vector_scaled(e, sigma, p));
        }
        return minimal_elements(all);
    }

    // Machine-word path for linear factors with small coefficients.
    bool fast = H.size() <= 10 && radius.fits_slong_p() && radius < Integer(1) << 40 && p.value() < (1ull << 20);
    std::vector<detail::LinearWord> lw;
    for (const auto& h : H) {
        if (!fast) break;
        if (h.degree() != 1) {
            fast = false;
            break;
        }
        Rational a = -h.coeff(0);
        if (abs(a.get_num()) >= Integer(1) << 40 || a.get_den() >= Integer(1) << 20) {
            fast = false;
            break;
        }
        detail::LinearWord w;
        w.u = a.get_num().get_si();
        w.v = a.get_den().get_si();
        w.shift = scaling_exponent(h, p) - vp(a.get_den(), p).value();
        lw.push_back(w);
    }

    std::vector<std::pair<Integer, Integer>> progressions;  // (start residue, step)
    if (S.kind() == SetSpec::Kind::Integers) {
        progressions.emplace_back(Integer(0), Integer(1));
    } else {
        for (const auto& r : S.residues()) progressions.emplace_back(r, S.modulus());
    }

    if (fast && S.modulus().fits_slong_p()) {
        std::unordered_set<std::uint64_t> seen;
        std::int64_t R = radius.get_si();
        for (const auto& [r, step] : progressions) {
            std::int64_t st = step.get_si();
            std::int64_t lo = -R + mod(r + R, step).get_si();
            switch (p.value()) {
                case 2:
                    detail::scan_words<2>(lo, R, st, lw, 2, seen);
                    break;
                case 3:
                    detail::scan_words<3>(lo, R, st, lw, 3, seen);
                    break;
                case 5:
                    detail::scan_words<5>(lo, R, st, lw, 5, seen);
                    break;
                default:
                    detail::scan_words<0>(lo, R, st, lw, p.value(), seen);
            }
        }
        for (auto key : seen) {
            ValVector v;
            for (std::size_t i = 0; i < lw.size(); ++i) {
                auto code = static_cast<std::int64_t>((key >> (6 * i)) & 63u);
                v.push_back(code == detail::kInfCode ? ValInt::infinity() : ValInt(code));
            }
            all.push_back(std::move(v));
        }
        return minimal_elements(all);
    }

    for (const auto& [r, step] : progressions) {
        Integer s = -radius + mod(r + radius, step);
        for (; s <= radius; s += step) {
            all.push_back(val_vector_scaled(Rational(s), sigma, p));
            if (all.size() > 4096) all = minimal_elements(std::move(all));
        }
    }
    return minimal_elements(all);
}

/// Relative closure membership of a point with valuation vector x.
inline DominanceResult in_closure_vector(const ValVector& x, const std::vector<ValVector>& tvecs) { return dominance_test(x, tvecs); }

inline DominanceResult in_closure(const Rational& s, const std::vector<Rational>& T, const std::vector<Poly>& H, Prime p) {
    auto sigma = scaled_factors(H, p);
    std::vector<ValVector> tv;
    for (const auto& t : T) tv.push_back(val_vector_scaled(t, sigma, p));
    return dominance_test(val_vector_scaled(s, sigma, p), tv);
}

struct DensityReport {
    bool dense = false;
    /// A minimal vector of S outside the dominance region of T, with its separator.
    ValVector witness;
    std::vector<Integer> separator;
};

/// Checks T's vectors against the minimal vectors of S.
inline DensityReport density_against(const std::vector<ValVector>& minimal, const std::vector<ValVector>& tvecs) {
    DensityReport rep;
    for (const auto& y : minimal) {
        auto r = dominance_test(y, tvecs);
        if (!r.inside) {
            rep.witness = y;
            rep.separator = r.separator;
            return rep;
        }
    }
    rep.dense = true;
    return rep;
}

inline DensityReport is_dense(const std::vector<Rational>& T, const SetSpec& S, const std::vector<Poly>& H, Prime p, const DenseOptions& opt = {}) {
    for (const auto& t : T) {
        if (!S.contains(t)) throw InputError("point " + to_string(t) + " is not in S");
    }
    DenseSet ref = dense_set(S, H, p, opt);
    std::vector<ValVector> tv;
    for (const auto& t : T) tv.push_back(val_vector_scaled(t, ref.scaled, p));
    return density_against(ref.minimal_vectors(), tv);
}

/// Greedy removal in ascending order while density is preserved.
inline DenseSet minimize_dense_set(const std::vector<Rational>& T, const SetSpec& S, const std::vector<Poly>& H, Prime p, const DenseOptions& opt = {}) {
    for (const auto& t : T) {
        if (!S.contains(t)) throw InputError("point " + to_string(t) + " is not in S");
    }
    DenseSet ref = dense_set(S, H, p, opt);
    auto minimal = ref.minimal_vectors();
    std::vector<Rational> keep = T;
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    auto vectors_of = [&](const std::vector<Rational>& pts) {
        std::vector<ValVector> v;
        for (const auto& t : pts) v.push_back(val_vector_scaled(t, ref.scaled, p));
        return v;
    };
    if (!density_against(minimal, vectors_of(keep)).dense) throw PreconditionError("minimize_dense_set: input is not dense");
    for (std::size_t i = 0; i < keep.size();) {
        std::vector<Rational> trial = keep;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (density_against(minimal, vectors_of(trial)).dense) {
            keep = std::move(trial);
        } else {
            ++i;
        }
    }
    DenseSet out = ref;
    out.points = keep;
    out.vectors = vectors_of(keep);
    out.covers.clear();
    out.isolated_roots.clear();
    for (const auto& t : keep) {
        if (S.is_isolated(t, p) && std::any_of(out.scaled.begin(), out.scaled.end(), [&](const Poly& g) { return g(t) == 0; })) {
            out.isolated_roots.push_back(t);
        }
    }
    return out;
}

inline DenseSet minimize_dense_set(const DenseSet& ds, const SetSpec& S, const DenseOptions& opt = {}) {
    return minimize_dense_set(ds.points, S, ds.factors, ds.prime, opt);
}

}  // namespace ivp

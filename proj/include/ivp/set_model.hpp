#pragma once

// Subsets S of the integers (or of Z_(p) for finite sets) and p-adic ball queries.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ivp/rational.hpp"

namespace ivp {

/// The residue class center + p^depth Z_(p), center in [0, p^depth).
struct Ball {
    Integer center{0};
    unsigned depth = 0;

    Integer modulus(Prime p) const { return pow(p, depth); }

    bool contains(const Rational& s, Prime p) const {
        if (vp(s, p) < ValInt(0)) return false;
        if (depth == 0) return true;
        return reduce_mod(s, modulus(p)) == center;
    }

    /// The child center + p^depth * y at depth + 1.
    Ball child(const Integer& y, Prime p) const { return Ball{center + modulus(p) * y, depth + 1}; }

    friend bool operator==(const Ball&, const Ball&) = default;
};

class SetSpec {
public:
    enum class Kind { Integers, Finite, Residues };

    static SetSpec integers() { return SetSpec(Kind::Integers); }

    static SetSpec finite(std::vector<Rational> elements) {
        if (elements.empty()) throw InputError("finite set must be nonempty");
        std::sort(elements.begin(), elements.end());
        if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
            throw InputError("finite set elements must be distinct");
        }
        SetSpec s(Kind::Finite);
        s.elements_ = std::move(elements);
        return s;
    }

    static SetSpec residues(const Integer& modulus, const std::vector<Integer>& residues) {
        if (modulus < 2) throw InputError("residue modulus must be at least 2");
        if (residues.empty()) throw InputError("residue set must be nonempty");
        SetSpec s(Kind::Residues);
        s.modulus_ = modulus;
        for (const auto& r : residues) s.residues_.push_back(mod(r, modulus));
        std::sort(s.residues_.begin(), s.residues_.end());
        s.residues_.erase(std::unique(s.residues_.begin(), s.residues_.end()), s.residues_.end());
        return s;
    }

    Kind kind() const { return kind_; }
    const std::vector<Rational>& elements() const { return elements_; }
    const Integer& modulus() const { return modulus_; }
    const std::vector<Integer>& residues() const { return residues_; }

    /// Every element of a finite set must be p-integral at the working prime.
    void check_local(Prime p) const {
        for (const auto& e : elements_) {
            if (vp(e, p) < ValInt(0)) {
                throw InputError("set element " + to_string(e) + " is not " + std::to_string(p.value()) + "-integral");
            }
        }
    }

    bool contains(const Rational& s) const {
        switch (kind_) {
            case Kind::Integers:
                return s.get_den() == 1;
            case Kind::Finite:
                return std::binary_search(elements_.begin(), elements_.end(), s);
            case Kind::Residues:
                return s.get_den() == 1 && std::binary_search(residues_.begin(), residues_.end(), mod(s.get_num(), modulus_));
        }
        return false;
    }

    bool meets(const Ball& b, Prime p) const {
        switch (kind_) {
            case Kind::Integers:
                return true;
            case Kind::Finite:
                return std::any_of(elements_.begin(), elements_.end(), [&](const Rational& e) { return b.contains(e, p); });
            case Kind::Residues:
                for (const auto& r : residues_) {
                    if (crt(b, p, r)) return true;
                }
                return false;
        }
        return false;
    }

    /// Elements of a finite set inside the ball.
    std::vector<Rational> members_in(const Ball& b, Prime p) const {
        std::vector<Rational> out;
        for (const auto& e : elements_) {
            if (b.contains(e, p)) out.push_back(e);
        }
        return out;
    }

    /// Child indices y in [0, p) whose child ball meets S, ascending; nullopt
    /// when every child does.
    std::optional<std::vector<Integer>> relevant_children(const Ball& b, Prime p) const {
        Integer pn = b.modulus(p);
        Integer pz = p.as_integer();
        std::vector<Integer> ys;
        switch (kind_) {
            case Kind::Integers:
                return std::nullopt;
            case Kind::Finite:
                for (const auto& e : elements_) {
                    if (!b.contains(e, p)) continue;
                    ys.push_back((reduce_mod(e, pn * pz) - b.center) / pn);
                }
                break;
            case Kind::Residues: {
                Integer rest = modulus_;
                unsigned a = static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), modulus_.get_mpz_t(), pz.get_mpz_t()));
                if (b.depth >= a) return meets(b, p) ? std::nullopt : std::optional<std::vector<Integer>>(std::vector<Integer>{});
                for (const auto& r : residues_) {
                    if (mod(r - b.center, pn) != 0) continue;
                    ys.push_back(mod((r - b.center) / pn, pz));
                }
                break;
            }
        }
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        return ys;
    }

    /// Element of S in the ball, not in exclude, of least absolute value
    /// (ties toward the positive value).
    Rational pick_representative(const Ball& b, Prime p, const std::vector<Rational>& exclude = {}) const {
        auto excluded = [&](const Rational& x) { return std::find(exclude.begin(), exclude.end(), x) != exclude.end(); };
        std::vector<Rational> cands;
        if (kind_ == Kind::Finite) {
            for (const auto& e : members_in(b, p)) {
                if (!excluded(e)) cands.push_back(e);
            }
        } else {
            std::vector<Integer> classes;
            Integer L = b.modulus(p);
            if (kind_ == Kind::Integers) {
                classes.push_back(b.center);
            } else {
                L = lcm(L, modulus_);
                for (const auto& r : residues_) {
                    if (auto x = crt(b, p, r)) classes.push_back(*x);
                }
            }
            long reach = static_cast<long>(exclude.size()) + 2;
            for (const auto& x0 : classes) {
                for (long k = -reach; k <= reach; ++k) {
                    Rational v(x0 + L * k);
                    if (!excluded(v)) cands.push_back(v);
                }
            }
        }
        if (cands.empty()) throw EmptyChoiceError("no admissible element of S in ball " + b.center.get_str() + " + " + std::to_string(p.value()) + "^" + std::to_string(b.depth));
        return *std::min_element(cands.begin(), cands.end(), magnitude_less);
    }

    bool is_isolated(const Rational& s, Prime p) const {
        if (!contains(s)) throw InputError("point " + to_string(s) + " is not in S");
        (void)p;
        return kind_ == Kind::Finite;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Integers:
                return "Z";
            case Kind::Finite: {
                std::string s = "{";
                for (std::size_t i = 0; i < elements_.size(); ++i) s += (i ? ", " : "") + to_string(elements_[i]);
                return s + "}";
            }
            case Kind::Residues: {
                std::string s = "{";
                for (std::size_t i = 0; i < residues_.size(); ++i) s += (i ? ", " : "") + residues_[i].get_str();
                return s + "} mod " + modulus_.get_str();
            }
        }
        return "";
    }

    friend bool operator==(const SetSpec&, const SetSpec&) = default;

private:
    explicit SetSpec(Kind k) : kind_(k) {}

    /// Least x >= 0 with x = center (mod p^depth) and x = r (mod modulus).
    std::optional<Integer> crt(const Ball& b, Prime p, const Integer& r) const {
        Integer pn = b.modulus(p);
        Integer g = gcd(pn, modulus_);
        Integer diff = r - b.center;
        if (mod(diff, g) != 0) return std::nullopt;
        Integer m2 = modulus_ / g;
        Integer t(0);
        if (m2 > 1) {
            Integer inv;
            Integer a = mod(pn / g, m2);
            mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m2.get_mpz_t());
            t = mod((diff / g) * inv, m2);
        }
        return mod(b.center + pn * t, lcm(pn, modulus_));
    }

    Kind kind_;
    std::vector<Rational> elements_;
    Integer modulus_{1};
    std::vector<Integer> residues_;
};

}  // namespace ivp

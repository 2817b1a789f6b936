#pragma once

#include <map>
#include <string>

#include "wpspine/bigfloat.hpp"
#include "wpspine/rational.hpp"

namespace wpspine {

/// Exact polynomial in the graded symbol pi^2 with rational coefficients.
/// This is the coefficient ring of the generating-function engine in exact
/// mode: weights contribute plain rationals, inner-vertex factors contribute
/// pi^2 monomials, and residual identities can be tested for exact vanishing.
class PiPoly {
public:
    PiPoly() = default;
    PiPoly(const Rat& c) {
        if (c != 0) terms_[0] = c;
    }
    PiPoly(long c) : PiPoly(Rat(c)) {}

    static PiPoly monomial(const Rat& c, int pi2_power) {
        PiPoly p;
        if (c != 0) p.terms_[pi2_power] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    /// Single-power test helper; throws unless the polynomial is 0 or a monomial.
    int grading() const {
        if (terms_.size() != 1) throw std::domain_error("PiPoly::grading: not a monomial");
        return terms_.begin()->first;
    }

    const std::map<int, Rat>& terms() const { return terms_; }

    Rat coeff(int pi2_power) const {
        auto it = terms_.find(pi2_power);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    PiPoly& operator+=(const PiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PiPoly& operator-=(const PiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
    friend PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }
    friend PiPoly operator-(const PiPoly& a) {
        PiPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }
    friend PiPoly operator*(const PiPoly& a, const PiPoly& b) {
        PiPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    PiPoly& operator*=(const PiPoly& o) { return *this = *this * o; }

    PiPoly& scale(const Rat& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend bool operator==(const PiPoly& a, const PiPoly& b) { return a.terms_ == b.terms_; }

    BigFloat eval(const BigFloat& pi2) const {
        BigFloat acc(0);
        for (const auto& [e, c] : terms_) acc += BigFloat(c) * bf_pow_int(pi2, e);
        return acc;
    }
    double eval_double(double pi2) const;

    std::string to_string() const;

private:
    void add_term(int e, const Rat& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, Rat> terms_;  // pi^2 exponent -> nonzero coefficient
};

inline double PiPoly::eval_double(double pi2) const {
    double acc = 0;
    for (const auto& [e, c] : terms_) {
        double p = 1;
        for (int i = 0; i < e; ++i) p *= pi2;
        acc += c.get_d() * p;
    }
    return acc;
}

inline std::string PiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.get_str();
        if (e > 0) out += "*pi2^" + std::to_string(e);
    }
    return out;
}

}  // namespace wpspine

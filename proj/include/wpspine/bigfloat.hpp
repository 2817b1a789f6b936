#pragma once

#include <mpfr.h>

#include <string>

#include "wpspine/rational.hpp"

namespace wpspine {

/// Fixed-precision multiprecision real (MPFR backed). The working precision
/// of 256 bits (~77 decimal digits) leaves ample headroom over the tightest
/// tolerance in the verification suites (1e-25).
class BigFloat {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    BigFloat() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
    BigFloat(double x) : BigFloat() { mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(long x) : BigFloat() { mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(int x) : BigFloat() { mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(const Rat& q) : BigFloat() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    explicit BigFloat(const std::string& s) : BigFloat() {
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigFloat: bad literal " + s);
    }

    BigFloat(const BigFloat& o) : BigFloat() { mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, kPrecision); mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r;
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    std::string to_string(int digits = 30) const;

private:
    mpfr_t v_;
};

BigFloat bf_pi();
BigFloat bf_abs(const BigFloat& x);
BigFloat bf_sqrt(const BigFloat& x);
BigFloat bf_exp(const BigFloat& x);
BigFloat bf_log(const BigFloat& x);
BigFloat bf_expm1(const BigFloat& x);
BigFloat bf_log1p(const BigFloat& x);
BigFloat bf_sin(const BigFloat& x);
BigFloat bf_cos(const BigFloat& x);
BigFloat bf_cosh(const BigFloat& x);
BigFloat bf_sinh(const BigFloat& x);
BigFloat bf_pow_int(const BigFloat& x, long e);

}  // namespace wpspine

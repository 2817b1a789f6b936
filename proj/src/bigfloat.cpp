#include "wpspine/bigfloat.hpp"

#include <cstdio>
#include <vector>

namespace wpspine {

std::string BigFloat::to_string(int digits) const {
    mpfr_exp_t exp;
    char* s = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string d = neg ? mant.substr(1) : mant;
    if (d.empty() || d.find_first_not_of('0') == std::string::npos) return "0";
    std::string out = (neg ? "-" : "");
    out += d.substr(0, 1) + "." + d.substr(1) + "e" + std::to_string(exp - 1);
    return out;
}

#define WPSPINE_BF_UNARY(name, fn)                  \
    BigFloat name(const BigFloat& x) {              \
        BigFloat r;                                 \
        fn(r.raw(), x.raw(), MPFR_RNDN);            \
        return r;                                   \
    }

WPSPINE_BF_UNARY(bf_abs, mpfr_abs)
WPSPINE_BF_UNARY(bf_sqrt, mpfr_sqrt)
WPSPINE_BF_UNARY(bf_exp, mpfr_exp)
WPSPINE_BF_UNARY(bf_log, mpfr_log)
WPSPINE_BF_UNARY(bf_expm1, mpfr_expm1)
WPSPINE_BF_UNARY(bf_log1p, mpfr_log1p)
WPSPINE_BF_UNARY(bf_sin, mpfr_sin)
WPSPINE_BF_UNARY(bf_cos, mpfr_cos)
WPSPINE_BF_UNARY(bf_cosh, mpfr_cosh)
WPSPINE_BF_UNARY(bf_sinh, mpfr_sinh)

#undef WPSPINE_BF_UNARY

BigFloat bf_pi() {
    BigFloat r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

BigFloat bf_pow_int(const BigFloat& x, long e) {
    BigFloat r;
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

}  // namespace wpspine

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wpspine {

/// Exact rational scalar used throughout the volume and series engines.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_factorial(int n) {
    if (n < 0) throw std::invalid_argument("rat_factorial: negative argument");
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return Rat(z);
}

inline Rat rat_binomial(long n, long k) {
    if (k < 0 || k > n) return Rat(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(z);
}

inline Rat rat_pow(const Rat& base, int e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rat(1) / rat_pow(base, -e);
    }
    Rat acc(1), b = base;
    int k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

/// 2^e as an exact rational, e may be negative.
inline Rat rat_pow2(int e) { return rat_pow(Rat(2), e); }

inline Rat catalan_number(int k) {
    if (k < 0) throw std::invalid_argument("catalan_number: negative index");
    return rat_binomial(2L * k, k) / Rat(k + 1);
}

/// Parses "3", "-3/4" or decimal strings like "0.25" into an exact rational.
inline Rat rat_from_string(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rat q(s);
        q.canonicalize();
        return q;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits = digits.substr(1);
    if (digits.empty()) throw std::invalid_argument("rat_from_string: bad literal " + s);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace wpspine

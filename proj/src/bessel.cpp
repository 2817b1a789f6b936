#include "wpspine/bessel.hpp"

#include <stdexcept>

namespace wpspine {

namespace {

constexpr double kEnvelope = 120.0;

// sum_m sign^m (x/2)^{2m+p} / (m! (m+p)!)
BigFloat ascending_series(int p, const BigFloat& x, bool alternating) {
    if (p < 0) throw std::invalid_argument("bessel: negative order");
    if (bf_abs(x) > BigFloat(kEnvelope))
        throw std::range_error("bessel: argument outside accuracy envelope");
    BigFloat half = x / BigFloat(2);
    BigFloat q = half * half;
    BigFloat term = bf_pow_int(half, p);
    for (int i = 1; i <= p; ++i) term /= BigFloat(i);
    BigFloat sum = term;
    BigFloat cutoff = BigFloat("1e-85");
    for (int m = 1; m < 100000; ++m) {
        term *= q / (BigFloat(m) * BigFloat(m + p));
        if (alternating && (m & 1)) sum -= term;
        else sum += term;
        // ratio < 1/2 bounds the tail by the last term
        if (bf_abs(term) < cutoff && q < BigFloat(m) * BigFloat(m + p) / BigFloat(2)) break;
    }
    return sum;
}

}  // namespace

BigFloat bessel_j(int p, const BigFloat& x) { return ascending_series(p, x, true); }
BigFloat bessel_i0(const BigFloat& x) { return ascending_series(0, x, false); }

double bessel_j0(double x) { return bessel_j(0, BigFloat(x)).to_double(); }
double bessel_j1(double x) { return bessel_j(1, BigFloat(x)).to_double(); }
double bessel_i0d(double x) { return bessel_i0(BigFloat(x)).to_double(); }

BigFloat j0_first_zero() {
    // J0 changes sign on (2, 3); Newton from the midpoint converges fast.
    BigFloat x(2.4);
    for (int it = 0; it < 64; ++it) {
        BigFloat f = bessel_j(0, x);
        BigFloat fp = -bessel_j(1, x);
        BigFloat step = f / fp;
        x -= step;
        if (bf_abs(step) < BigFloat("1e-60")) break;
    }
    return x;
}

double cwp_constant() {
    BigFloat c0 = j0_first_zero();
    BigFloat pi = bf_pi();
    return (BigFloat(2) * pi / bf_sqrt(BigFloat(3) * c0)).to_double();
}

}  // namespace wpspine

#pragma once

#include "wpspine/bigfloat.hpp"

namespace wpspine {

/// Bessel J_p by the ascending series, evaluated in multiprecision with the
/// tail certified below the working precision once the term ratio drops
/// under 1/2. Arguments beyond |x| ~ 1e2 exhaust the cancellation headroom
/// and raise std::range_error.
BigFloat bessel_j(int p, const BigFloat& x);

/// Modified Bessel I_0, same evaluation scheme (no cancellation).
BigFloat bessel_i0(const BigFloat& x);

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_i0d(double x);

/// First positive zero of J_0 (bracketing + Newton, J_0' = -J_1).
BigFloat j0_first_zero();

/// Scaling constant 2*pi/sqrt(3*c0) of the large-n distance-difference
/// variance, with c0 the first positive zero of J_0.
double cwp_constant();

}  // namespace wpspine

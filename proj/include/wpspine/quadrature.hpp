#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace wpspine {

using RealFn = std::function<double(double)>;

/// Gauss-Legendre rule on [-1, 1]; cached per point count.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gl_rule(int n);

double gl_integrate(const RealFn& f, double a, double b, int n = 24);

/// Panel decomposition of (a, b), geometrically refined toward the marked
/// endpoints so that integrable endpoint singularities (powers > -1, logs)
/// are resolved to ~1e-12 of the interval mass.
std::vector<std::pair<double, double>> graded_panels(double a, double b, bool grade_a,
                                                     bool grade_b, int levels = 96);

double integrate_graded(const RealFn& f, double a, double b, bool grade_a, bool grade_b,
                        int nodes = 24);

/// Bisecting Gauss-Legendre with absolute tolerance.
double integrate_adaptive(const RealFn& f, double a, double b, double tol = 1e-9,
                          int max_depth = 52);

/// Integrand with exact distances to both endpoints: f(x, d_lo, d_hi) with
/// d_lo = x - a and d_hi = b - x supplied directly, so factors singular at an
/// endpoint can be evaluated without catastrophic subtraction.
using SidedFn = std::function<double(double, double, double)>;

/// Quadrature of an integrand with power-law endpoint behavior ~ d^alpha
/// (alpha > -1). Each singular side is regularized by the substitution
/// d = t^{1/(1+alpha)}, after which geometric panels resolve the mass down to
/// ~1e-29 of the interval, far below what untransformed double arithmetic
/// can see near the endpoint.
double integrate_sided_pow(const SidedFn& f, double a, double b, double alpha_a, double alpha_b,
                           int nodes = 24, int levels = 96);

/// Prefix integral C(x) = int_lo^x f of a fixed integrand on (lo, hi), with
/// panels graded toward singular ends. Queries re-integrate only the partial
/// panel containing x, so chained cumulatives stay accurate.
class CumulativeFunction {
public:
    CumulativeFunction(RealFn f, double lo, double hi, bool grade_lo, bool grade_hi,
                       int nodes = 24);
    double operator()(double x) const;
    double total() const { return prefix_.back(); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    RealFn f_;
    double lo_, hi_;
    int nodes_;
    std::vector<std::pair<double, double>> panels_;
    std::vector<double> prefix_;  // prefix_[i] = integral over panels 0..i-1
};

}  // namespace wpspine

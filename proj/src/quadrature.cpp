#include "wpspine/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wpspine {

namespace {

GaussLegendre compute_rule(int n) {
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1 - x * x) * pp * pp);
    }
    return r;
}

}  // namespace

const GaussLegendre& gl_rule(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double gl_integrate(const RealFn& f, double a, double b, int n) {
    const GaussLegendre& r = gl_rule(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

std::vector<std::pair<double, double>> graded_panels(double a, double b, bool grade_a,
                                                     bool grade_b, int levels) {
    if (!(b > a)) throw std::invalid_argument("graded_panels: empty interval");
    std::vector<double> cuts;
    double len = b - a;
    if (grade_a && grade_b) {
        double m = a + 0.5 * len;
        for (int k = levels; k >= 1; --k) cuts.push_back(a + 0.5 * len * std::pow(0.5, k));
        cuts.push_back(m);
        for (int k = 1; k <= levels; ++k) cuts.push_back(b - 0.5 * len * std::pow(0.5, k));
    } else if (grade_a) {
        for (int k = levels; k >= 1; --k) cuts.push_back(a + len * std::pow(0.5, k));
    } else if (grade_b) {
        for (int k = 1; k <= levels; ++k) cuts.push_back(b - len * std::pow(0.5, k));
    } else {
        for (int k = 1; k < 8; ++k) cuts.push_back(a + len * k / 8.0);
    }
    std::vector<std::pair<double, double>> panels;
    double prev = a;
    for (double c : cuts) {
        if (c > prev && c < b) {
            panels.emplace_back(prev, c);
            prev = c;
        }
    }
    panels.emplace_back(prev, b);
    return panels;
}

double integrate_graded(const RealFn& f, double a, double b, bool grade_a, bool grade_b,
                        int nodes) {
    double acc = 0;
    for (auto [lo, hi] : graded_panels(a, b, grade_a, grade_b)) acc += gl_integrate(f, lo, hi, nodes);
    return acc;
}

namespace {

double adaptive_rec(const RealFn& f, double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = gl_integrate(f, a, m, 15);
    double right = gl_integrate(f, m, b, 15);
    if (depth <= 0 || std::abs(left + right - whole) < tol) return left + right;
    return adaptive_rec(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const RealFn& f, double a, double b, double tol, int max_depth) {
    return adaptive_rec(f, a, b, gl_integrate(f, a, b, 15), tol, max_depth);
}

namespace {

// One regularized half: integral over distances d in (0, span) from the
// endpoint, with f_of_d(d) ~ d^alpha near d = 0.
double half_sided(const std::function<double(double)>& f_of_d, double span, double alpha,
                  int nodes, int levels) {
    double q = 1.0 / (1.0 + alpha);
    double T = std::pow(span, 1.0 / q);
    const GaussLegendre& rule = gl_rule(nodes);
    double acc = 0;
    for (auto [ta, tb] : graded_panels(0, T, true, false, levels)) {
        double mid = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
        double panel = 0;
        for (int i = 0; i < nodes; ++i) {
            double t = mid + half * rule.nodes[i];
            double d = std::pow(t, q);
            panel += rule.weights[i] * f_of_d(d) * q * std::pow(t, q - 1.0);
        }
        acc += panel * half;
    }
    return acc;
}

}  // namespace

double integrate_sided_pow(const SidedFn& f, double a, double b, double alpha_a, double alpha_b,
                           int nodes, int levels) {
    if (!(b > a)) throw std::invalid_argument("integrate_sided_pow: empty interval");
    double len = b - a, span = 0.5 * len;
    double left = half_sided(
        [&](double d) { return f(a + d, d, len - d); }, span, alpha_a, nodes, levels);
    double right = half_sided(
        [&](double d) { return f(b - d, len - d, d); }, span, alpha_b, nodes, levels);
    return left + right;
}

CumulativeFunction::CumulativeFunction(RealFn f, double lo, double hi, bool grade_lo,
                                       bool grade_hi, int nodes)
    : f_(std::move(f)), lo_(lo), hi_(hi), nodes_(nodes) {
    panels_ = graded_panels(lo, hi, grade_lo, grade_hi);
    prefix_.resize(panels_.size() + 1);
    prefix_[0] = 0;
    for (std::size_t i = 0; i < panels_.size(); ++i)
        prefix_[i + 1] = prefix_[i] + gl_integrate(f_, panels_[i].first, panels_[i].second, nodes_);
}

double CumulativeFunction::operator()(double x) const {
    if (x <= lo_) return 0;
    if (x >= hi_) return prefix_.back();
    auto it = std::upper_bound(panels_.begin(), panels_.end(), x,
                               [](double v, const std::pair<double, double>& p) {
                                   return v < p.second;
                               });
    std::size_t idx = static_cast<std::size_t>(it - panels_.begin());
    if (idx >= panels_.size()) return prefix_.back();
    double base = prefix_[idx];
    double a = panels_[idx].first;
    if (x <= a) return base;
    return base + gl_integrate(f_, a, x, nodes_);
}

}  // namespace wpspine

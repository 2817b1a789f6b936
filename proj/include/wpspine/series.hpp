#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wpspine/bigfloat.hpp"
#include "wpspine/pipoly.hpp"
#include "wpspine/rational.hpp"

namespace wpspine {

inline bool ring_is_zero(const Rat& x) { return x == 0; }
inline bool ring_is_zero(const PiPoly& x) { return x.is_zero(); }
inline bool ring_is_zero(const BigFloat& x) { return x.is_zero(); }

/// Truncated power series in the bookkeeping variable s: coefficients 0..N.
/// All binary operations require matching truncation orders.
template <typename T>
class Series {
public:
    Series() = default;
    explicit Series(int order) : c_(order + 1) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const T& operator[](int k) const { return c_.at(k); }
    T& operator[](int k) { return c_.at(k); }
    const std::vector<T>& coeffs() const { return c_; }

    bool all_zero() const {
        for (const T& x : c_)
            if (!ring_is_zero(x)) return false;
        return true;
    }

private:
    std::vector<T> c_;
};

template <typename T>
void check_orders(const Series<T>& a, const Series<T>& b) {
    if (a.order() != b.order()) throw std::invalid_argument("Series: order mismatch");
}

template <typename T>
Series<T> series_add(const Series<T>& a, const Series<T>& b) {
    check_orders(a, b);
    Series<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
    return r;
}

template <typename T>
Series<T> series_sub(const Series<T>& a, const Series<T>& b) {
    check_orders(a, b);
    Series<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = a[k] - b[k];
    return r;
}

template <typename T>
Series<T> series_mul(const Series<T>& a, const Series<T>& b) {
    check_orders(a, b);
    Series<T> r(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        if (ring_is_zero(a[i])) continue;
        for (int j = 0; i + j <= a.order(); ++j) {
            if (ring_is_zero(b[j])) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

template <typename T>
Series<T> series_scale(const Series<T>& a, const T& c) {
    Series<T> r(a.order());
    for (int k = 0; k <= a.order(); ++k) r[k] = a[k] * c;
    return r;
}

/// Multiplication by s^k.
template <typename T>
Series<T> series_shift(const Series<T>& a, int k) {
    Series<T> r(a.order());
    for (int j = 0; j + k <= a.order(); ++j) r[j + k] = a[j];
    return r;
}

template <typename T>
Series<T> series_derivative(const Series<T>& a) {
    Series<T> r(a.order());
    for (int k = 1; k <= a.order(); ++k) r[k - 1] = a[k] * T(k);
    return r;
}

/// Composition f(g(s)) for g with zero constant term.
template <typename T>
Series<T> series_compose(const Series<T>& f, const Series<T>& g) {
    check_orders(f, g);
    if (!ring_is_zero(g[0]))
        throw std::invalid_argument("series_compose: inner constant term nonzero");
    Series<T> acc(f.order());
    for (int d = f.order(); d >= 0; --d) {
        acc = series_mul(acc, g);
        acc[0] += f[d];
    }
    return acc;
}

/// Multiplicative inverse; requires an invertible constant term.
template <typename T>
Series<T> series_reciprocal(const Series<T>& a) {
    if (ring_is_zero(a[0]))
        throw std::invalid_argument("series_reciprocal: zero constant term");
    Series<T> r(a.order());
    r[0] = T(1) / a[0];
    for (int k = 1; k <= a.order(); ++k) {
        T s{};
        for (int j = 1; j <= k; ++j) s += a[j] * r[k - j];
        r[k] = -(s / a[0]);
    }
    return r;
}

/// Compositional inverse of f (f[0] = 0, f[1] invertible), by the residue
/// formula: [s^n] g = (1/n) [r^{n-1}] (r/f)^n.
template <typename T>
Series<T> series_reversion(const Series<T>& f) {
    if (!ring_is_zero(f[0])) throw std::invalid_argument("series_reversion: f(0) != 0");
    if (ring_is_zero(f[1])) throw std::invalid_argument("series_reversion: f'(0) = 0");
    int N = f.order();
    Series<T> f_over_r(N);
    for (int k = 0; k < N; ++k) f_over_r[k] = f[k + 1];
    Series<T> phi = series_reciprocal(f_over_r);
    Series<T> g(N);
    Series<T> power(N);
    power[0] = T(1);
    for (int n = 1; n <= N; ++n) {
        power = series_mul(power, phi);
        g[n] = power[n - 1] / T(n);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Weights and generating functions
// ---------------------------------------------------------------------------

/// Finite atomic weight mu = sum_j mass_j * delta_{length_j}.
struct AtomicWeight {
    struct Atom {
        Rat mass;
        Rat length;
    };
    std::vector<Atom> atoms;

    Rat total_mass() const;
    /// t_k[mu] = sum_j mass_j * (2/k!) (length_j/2)^{2k}.
    Rat times(int k) const;
    BigFloat times_bf(int k) const;

    /// Parses "x1:K1,x2:K2"; plain "x" entries mean an atom at length 0.
    static AtomicWeight parse(const std::string& text);
    std::string to_string() const;
};

/// Order-by-order solution R(s) of
///   R = sum_{d>=0} 2^{d-1}/d! (s t_d[mu] + 1_{d>=2} gamma_d) R^d,
/// the fixed-point equation of the two-cusp generating function under the
/// rescaling mu -> s mu. The first coefficient equals the total mass.
Series<PiPoly> solve_string_exact(const AtomicWeight& mu, int N);
Series<BigFloat> solve_string_real(const AtomicWeight& mu, int N);

/// Z(r_series; s mu] where Z(r; mu] = r - sum_{d>=2} 2^{d-1}/d! gamma_d r^d
/// - sum_{d>=0} 2^{d-1}/d! t_d[mu] r^d; vanishes identically on the string
/// solution.
Series<PiPoly> z_of_series_exact(const Series<PiPoly>& r_series, const AtomicWeight& mu);
Series<BigFloat> z_of_series_real(const Series<BigFloat>& r_series, const AtomicWeight& mu);

/// eta(u; s mu] = sum_p u^{2p}/(2p+1)!! d^{p+1}Z/dr^{p+1}(R[s mu]; s mu],
/// truncated in p once terms fall far below working precision.
Series<BigFloat> eta_series(const BigFloat& u, const AtomicWeight& mu, int N);

/// Distance-dependent three-point generating function
/// xhat(u; s mu] = sin(2 pi u) / (2 pi u * eta(u; s mu]); constant term 1.
Series<BigFloat> xhat_series(const BigFloat& u, const AtomicWeight& mu, int N);

/// Laplace-transform kernel of the order-1 coefficient of xhat:
/// (2 pi/u)(cosh(L u) - cos(2 pi u))/sin(2 pi u).
BigFloat xhat_order1_closed_form(const BigFloat& u, const BigFloat& L);

/// Density of the distance difference on the three-cusp one-boundary
/// surface: X1(x; L) = 2 log((cosh x + cosh(L/2)) / (cosh x - 1)).
/// Integrable log singularity at x = 0 (returns +infinity there).
double x1_density(double x, double L);

struct VarianceRow {
    int n;
    double variance;  // Var D(S_n) for the n+1-cusped sphere
    double ratio;     // variance / (cwp^2 sqrt(pi/8) sqrt(n)), n >= 1
};

struct VariancePipeline {
    // Exact rational series in the rescaled variable (pi^2 = 1 grading
    // factored out); index n carries an implicit power pi^{2n} resp.
    // pi^{2n+2} for xhat0 resp. xhat2.
    Series<Rat> m0, m1, xhat0, xhat2;
    std::vector<VarianceRow> rows;
};

/// Exact coefficients of the distance-difference variance for the fully
/// cusped spheres, n = 0..n_max, plus the normalized large-n ratio.
VariancePipeline variance_pipeline(int n_max);

}  // namespace wpspine

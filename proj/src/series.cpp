#include "wpspine/series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wpspine/bessel.hpp"

namespace wpspine {

Rat AtomicWeight::total_mass() const {
    Rat s(0);
    for (const Atom& a : atoms) s += a.mass;
    return s;
}

Rat AtomicWeight::times(int k) const {
    if (k < 0) throw std::invalid_argument("AtomicWeight::times: negative index");
    Rat s(0);
    Rat pref = Rat(2) / rat_factorial(k);
    for (const Atom& a : atoms) s += a.mass * pref * rat_pow(a.length / 2, 2 * k);
    return s;
}

BigFloat AtomicWeight::times_bf(int k) const { return BigFloat(times(k)); }

AtomicWeight AtomicWeight::parse(const std::string& text) {
    AtomicWeight mu;
    if (text.empty()) return mu;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        Atom a;
        a.mass = rat_from_string(colon == std::string::npos ? item : item.substr(0, colon));
        a.length = colon == std::string::npos ? Rat(0) : rat_from_string(item.substr(colon + 1));
        if (a.mass < 0) throw std::invalid_argument("AtomicWeight: negative mass");
        if (a.length < 0) throw std::invalid_argument("AtomicWeight: negative length");
        mu.atoms.push_back(std::move(a));
    }
    return mu;
}

std::string AtomicWeight::to_string() const {
    std::string out;
    for (const Atom& a : atoms) {
        if (!out.empty()) out += ",";
        out += a.mass.get_str() + ":" + a.length.get_str();
    }
    return out;
}

namespace {

// gamma_d = (-1)^d pi^{2d-2}/(d-1)!; c_d = 2^{d-1}/d!. The string equation
// couples them only through the products c_d gamma_d and c_d t_d.
Rat c_coeff(int d) { return rat_pow2(d - 1) / rat_factorial(d); }

Rat c_gamma_scaled(int d) {  // c_d gamma_d with pi^2 = 1 (grading d-1)
    Rat v = rat_pow2(d - 1) / (rat_factorial(d) * rat_factorial(d - 1));
    return (d % 2 == 0) ? v : -v;
}

template <typename T>
struct Ring;

template <>
struct Ring<PiPoly> {
    static PiPoly from_rat(const Rat& q) { return PiPoly(q); }
    static PiPoly c_gamma(int d) { return PiPoly::monomial(c_gamma_scaled(d), d - 1); }
};

template <>
struct Ring<BigFloat> {
    static BigFloat from_rat(const Rat& q) { return BigFloat(q); }
    static BigFloat c_gamma(int d) {
        BigFloat pi2 = bf_pi() * bf_pi();
        return BigFloat(c_gamma_scaled(d)) * bf_pow_int(pi2, d - 1);
    }
};

// The fixed-point map F(R) = sum_d (s c_d t_d + 1_{d>=2} c_d gamma_d) R^d.
template <typename T>
std::vector<Series<T>> string_rhs_coeffs(const AtomicWeight& mu, int N) {
    std::vector<Series<T>> a;
    a.reserve(N + 1);
    for (int d = 0; d <= N; ++d) {
        Series<T> ad(N);
        if (d >= 2) ad[0] = Ring<T>::c_gamma(d);
        if (N >= 1) ad[1] = Ring<T>::from_rat(c_coeff(d) * mu.times(d));
        a.push_back(std::move(ad));
    }
    return a;
}

template <typename T>
Series<T> horner(const std::vector<Series<T>>& a, const Series<T>& r) {
    Series<T> acc(r.order());
    for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
        acc = series_add(series_mul(acc, r), a[d]);
    return acc;
}

template <typename T>
Series<T> solve_string_T(const AtomicWeight& mu, int N) {
    if (N < 1) throw std::invalid_argument("solve_string: need N >= 1");
    auto a = string_rhs_coeffs<T>(mu, N);
    Series<T> r(N);
    for (int sweep = 0; sweep < N; ++sweep) r = horner(a, r);
    return r;
}

template <typename T>
Series<T> z_of_series_T(const Series<T>& r_series, const AtomicWeight& mu) {
    if (!ring_is_zero(r_series[0]))
        throw std::invalid_argument("z_of_series: nonzero constant term");
    auto a = string_rhs_coeffs<T>(mu, r_series.order());
    return series_sub(r_series, horner(a, r_series));
}

}  // namespace

Series<PiPoly> solve_string_exact(const AtomicWeight& mu, int N) {
    Series<PiPoly> r = solve_string_T<PiPoly>(mu, N);
    Series<PiPoly> residual = z_of_series_T<PiPoly>(r, mu);
    if (!residual.all_zero())
        throw std::runtime_error("solve_string: fixed point failed to stabilize");
    return r;
}

Series<BigFloat> solve_string_real(const AtomicWeight& mu, int N) {
    Series<BigFloat> r = solve_string_T<BigFloat>(mu, N);
    Series<BigFloat> residual = z_of_series_T<BigFloat>(r, mu);
    BigFloat scale(1);
    for (int k = 0; k <= N; ++k)
        if (bf_abs(r[k]) > scale) scale = bf_abs(r[k]);
    for (int k = 0; k <= N; ++k)
        if (bf_abs(residual[k]) > BigFloat("1e-50") * scale)
            throw std::runtime_error("solve_string: fixed point failed to stabilize");
    return r;
}

Series<PiPoly> z_of_series_exact(const Series<PiPoly>& r_series, const AtomicWeight& mu) {
    return z_of_series_T<PiPoly>(r_series, mu);
}

Series<BigFloat> z_of_series_real(const Series<BigFloat>& r_series, const AtomicWeight& mu) {
    return z_of_series_T<BigFloat>(r_series, mu);
}

// ---------------------------------------------------------------------------
// eta and xhat
// ---------------------------------------------------------------------------

namespace {

BigFloat max_abs_coeff(const Series<BigFloat>& s) {
    BigFloat m(0);
    for (int k = 0; k <= s.order(); ++k) {
        BigFloat a = bf_abs(s[k]);
        if (a > m) m = a;
    }
    return m;
}

// [r^d] Z(r; s mu] as a degree-<=1 polynomial in s.
struct ZCoeff {
    BigFloat base;  // d = 1: 1; d >= 2: -c_d gamma_d; d = 0: 0
    BigFloat mu_part;  // -c_d t_d[mu]
};

ZCoeff z_coeff(int d, const AtomicWeight& mu) {
    ZCoeff z{BigFloat(0), BigFloat(0)};
    if (d == 1) z.base = BigFloat(1);
    if (d >= 2) z.base = -Ring<BigFloat>::c_gamma(d);
    z.mu_part = -BigFloat(c_coeff(d)) * mu.times_bf(d);
    return z;
}

}  // namespace

Series<BigFloat> eta_series(const BigFloat& u, const AtomicWeight& mu, int N) {
    Series<BigFloat> r = solve_string_real(mu, N);
    Series<BigFloat> eta(N);
    BigFloat u2 = u * u;
    BigFloat weight(1);  // u^{2p} / (2p+1)!!
    const BigFloat tiny("1e-55");
    int quiet = 0;
    for (int p = 0;; ++p) {
        // coefficients of d^{p+1}Z/dr^{p+1}: w_m = z_{m+p+1} (m+p+1)!/m!
        std::vector<Series<BigFloat>> w;
        w.reserve(N + 1);
        BigFloat rising(1);
        for (int i = 1; i <= p + 1; ++i) rising *= BigFloat(i);  // (p+1)!/0!
        for (int m = 0; m <= N; ++m) {
            ZCoeff z = z_coeff(m + p + 1, mu);
            Series<BigFloat> wm(N);
            wm[0] = z.base * rising;
            if (N >= 1) wm[1] = z.mu_part * rising;
            w.push_back(std::move(wm));
            rising = rising / BigFloat(m + 1) * BigFloat(m + p + 2);
        }
        Series<BigFloat> term = series_scale(horner(w, r), weight);
        eta = series_add(eta, term);
        if (u.is_zero()) break;
        BigFloat scale_ref = max_abs_coeff(eta) + BigFloat(1);
        if (max_abs_coeff(term) < tiny * scale_ref) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        if (p > 400) throw std::runtime_error("eta_series: p-expansion failed to converge");
        weight = weight * u2 / BigFloat(2 * p + 3);
    }
    return eta;
}

Series<BigFloat> xhat_series(const BigFloat& u, const AtomicWeight& mu, int N) {
    Series<BigFloat> eta = eta_series(u, mu, N);
    if (bf_abs(eta[0]) < BigFloat("1e-40"))
        throw std::invalid_argument("xhat_series: eta has vanishing constant term");
    BigFloat sinc1 = u.is_zero()
                         ? BigFloat(1)
                         : bf_sin(BigFloat(2) * bf_pi() * u) / (BigFloat(2) * bf_pi() * u);
    return series_scale(series_reciprocal(eta), sinc1);
}

BigFloat xhat_order1_closed_form(const BigFloat& u, const BigFloat& L) {
    BigFloat two_pi_u = BigFloat(2) * bf_pi() * u;
    return (BigFloat(2) * bf_pi() / u) * (bf_cosh(L * u) - bf_cos(two_pi_u)) / bf_sin(two_pi_u);
}

double x1_density(double x, double L) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    // (cosh x + cosh(L/2))/(cosh x - 1) = 1 + (1 + cosh(L/2))/(2 sinh^2(x/2));
    // the log1p form stays accurate through both the x = 0 singularity and
    // the exponentially small tail.
    double sh = std::sinh(x / 2);
    return 2.0 * std::log1p((1.0 + std::cosh(L / 2)) / (2 * sh * sh));
}

// ---------------------------------------------------------------------------
// Variance pipeline (weight x * delta_0, exact rationals, pi^2 graded out)
// ---------------------------------------------------------------------------

VariancePipeline variance_pipeline(int n_max) {
    if (n_max < 1) throw std::invalid_argument("variance_pipeline: need n_max >= 1");
    const int N = n_max;
    const int M = N + 2;

    // With pi^2 = 1 graded out, W(r) = Z(r; 0] solves r W'' + 2 W = 0
    // (Bessel equation in disguise), so its compositional inverse R(x)
    // satisfies R R'' = 2 x (R')^3 with R(0) = 0, R'(0) = 1. That yields the
    // coefficients in O(N^2) rational operations; a term-by-term reversion
    // of the series of W would cost O(N^3) on fat rationals.
    std::vector<Rat> a(M + 1), rp(M + 1), c2(M + 1);
    a[1] = 1;
    rp[0] = 1;  // rp[m] = (m+1) a[m+1] = [x^m] R'
    c2[0] = 1;  // running coefficients of (R')^2
    for (int n = 1; n < M; ++n) {
        Rat c3(0);  // [x^{n-1}] (R')^3
        for (int j = 0; j <= n - 1; ++j) c3 += c2[j] * rp[n - 1 - j];
        Rat rhs = Rat(2) * c3;
        for (int k = 2; k <= n; ++k)
            rhs -= a[k] * Rat((n - k + 2) * (n - k + 1)) * a[n - k + 2];
        a[n + 1] = rhs / Rat(n * (n + 1));
        rp[n] = Rat(n + 1) * a[n + 1];
        for (int j = n; j <= M && j - n <= n; ++j) {
            if (j - n == n)
                c2[j] += rp[n] * rp[n];
            else
                c2[j] += Rat(2) * rp[n] * rp[j - n];
        }
    }

    Series<Rat> rprime(N), rsecond(N);
    for (int m = 0; m <= N; ++m) {
        rprime[m] = rp[m];
        rsecond[m] = Rat((m + 2) * (m + 1)) * a[m + 2];
    }

    VariancePipeline out;
    out.m0 = series_reciprocal(rprime);                       // M0 = Z'(R) = 1/R'
    Series<Rat> q = series_mul(rsecond, out.m0);              // R''/R'
    out.m1 = series_scale(series_mul(q, series_mul(out.m0, out.m0)), Rat(-1));  // -R''/R'^3
    out.xhat0 = rprime;
    out.xhat2 = series_sub(series_scale(q, Rat(2, 3)), series_scale(rprime, Rat(4, 3)));

    const double pi2 = M_PI * M_PI;
    const double cwp = cwp_constant();
    const double norm = cwp * cwp * std::sqrt(M_PI / 8.0);
    for (int n = 0; n <= n_max; ++n) {
        VarianceRow row;
        row.n = n;
        Rat var = out.xhat2[n] / (Rat(4) * out.xhat0[n]);
        row.variance = pi2 * var.get_d();
        row.ratio = n >= 1 ? row.variance / (norm * std::sqrt(static_cast<double>(n)))
                           : std::numeric_limits<double>::quiet_NaN();
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace wpspine

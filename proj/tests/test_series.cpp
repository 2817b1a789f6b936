#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpspine/bessel.hpp"
#include "wpspine/quadrature.hpp"
#include "wpspine/rng.hpp"
#include "wpspine/series.hpp"
#include "wpspine/wp_poly.hpp"

using namespace wpspine;

TEST_CASE("times of atomic weights") {
    AtomicWeight xd0 = AtomicWeight::parse("3/2:0");
    CHECK(xd0.times(0) == Rat(3));  // 2x
    CHECK(xd0.times(1) == Rat(0));
    CHECK(xd0.times(5) == Rat(0));
    AtomicWeight d2 = AtomicWeight::parse("1:2");
    CHECK(d2.times(1) == Rat(2));
    CHECK_THROWS_AS(AtomicWeight::parse("-1:0"), std::invalid_argument);
}

TEST_CASE("string equation solution") {
    SUBCASE("single cusp atom: R = m s + m^2 pi^2 s^2 + ...") {
        AtomicWeight mu = AtomicWeight::parse("1:0");
        Series<PiPoly> r = solve_string_exact(mu, 4);
        CHECK(r[0].is_zero());
        CHECK(r[1] == PiPoly(Rat(1)));
        CHECK(r[2] == PiPoly::monomial(Rat(1), 1));

        AtomicWeight mu2 = AtomicWeight::parse("3/2:0");
        Series<PiPoly> r2 = solve_string_exact(mu2, 4);
        CHECK(r2[1] == PiPoly(Rat(3, 2)));
        CHECK(r2[2] == PiPoly::monomial(Rat(9, 4), 1));
    }
    SUBCASE("zero weight") {
        AtomicWeight zero;
        CHECK(solve_string_exact(zero, 6).all_zero());
    }
    SUBCASE("first coefficient is the total mass") {
        AtomicWeight mu = AtomicWeight::parse("1/2:1,1/4:3,2:0");
        Series<PiPoly> r = solve_string_exact(mu, 6);
        CHECK(r[1] == PiPoly(mu.total_mass()));
    }
    SUBCASE("residual vanishes identically") {
        AtomicWeight mu = AtomicWeight::parse("1/2:1,3:2");
        Series<PiPoly> r = solve_string_exact(mu, 10);
        CHECK(z_of_series_exact(r, mu).all_zero());
        Series<BigFloat> rr = solve_string_real(mu, 10);
        Series<BigFloat> res = z_of_series_real(rr, mu);
        for (int k = 0; k <= 10; ++k) CHECK(std::abs(res[k].to_double()) < 1e-40);
    }
    SUBCASE("order validation") {
        CHECK_THROWS_AS(solve_string_exact(AtomicWeight{}, 0), std::invalid_argument);
    }
}

TEST_CASE("r-expansion of the residual functional") {
    // applied to the identity series: coefficient of r^1 is 1, of r^2 is -pi^2
    AtomicWeight zero;
    Series<PiPoly> identity(4);
    identity[1] = PiPoly(Rat(1));
    Series<PiPoly> z = z_of_series_exact(identity, zero);
    CHECK(z[1] == PiPoly(Rat(1)));
    CHECK(z[2] == PiPoly::monomial(Rat(-1), 1));

    Series<PiPoly> bad(3);
    bad[0] = PiPoly(Rat(1));
    CHECK_THROWS_AS(z_of_series_exact(bad, zero), std::invalid_argument);
}

TEST_CASE("eta series") {
    SUBCASE("zero weight reduces to the sinc factor") {
        AtomicWeight zero;
        for (double u : {0.1, 0.3, 0.45}) {
            Series<BigFloat> eta = eta_series(BigFloat(u), zero, 3);
            double expect = std::sin(2 * M_PI * u) / (2 * M_PI * u);
            CHECK(eta[0].to_double() == doctest::Approx(expect).epsilon(1e-14));
            for (int k = 1; k <= 3; ++k) CHECK(std::abs(eta[k].to_double()) < 1e-50);
        }
    }
    SUBCASE("order-1 coefficient") {
        AtomicWeight mu = AtomicWeight::parse("1/2:1,1/4:2");
        double u = 0.2;
        Series<BigFloat> eta = eta_series(BigFloat(u), mu, 2);
        double expect = 0;
        for (const auto& atom : mu.atoms)
            expect += atom.mass.get_d() *
                      (std::cos(2 * M_PI * u) - std::cosh(atom.length.get_d() * u)) / (u * u);
        CHECK(eta[1].to_double() == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("u = 0 keeps only the first derivative term") {
        AtomicWeight mu = AtomicWeight::parse("1:0");
        Series<BigFloat> eta = eta_series(BigFloat(0), mu, 2);
        CHECK(eta[0].to_double() == doctest::Approx(1.0));
    }
}

TEST_CASE("xhat series") {
    AtomicWeight mu = AtomicWeight::parse("1:1");
    SUBCASE("constant term 1, order-1 closed form") {
        for (double u : {0.1, 0.25, 0.4}) {
            Series<BigFloat> xh = xhat_series(BigFloat(u), mu, 2);
            CHECK(std::abs(xh[0].to_double() - 1.0) < 1e-30);
            BigFloat closed = xhat_order1_closed_form(BigFloat(u), BigFloat(1.0));
            CHECK(std::abs(((xh[1] - closed) / closed).to_double()) < 1e-30);
        }
    }
    SUBCASE("coefficients are even in u") {
        Series<BigFloat> plus = xhat_series(BigFloat(0.17), mu, 3);
        Series<BigFloat> minus = xhat_series(BigFloat(-0.17), mu, 3);
        for (int k = 0; k <= 3; ++k)
            CHECK(std::abs((plus[k] - minus[k]).to_double()) < 1e-12);
    }
    SUBCASE("u -> 0 recovers the volume generating function") {
        Series<BigFloat> xh = xhat_series(BigFloat(0), mu, 1);
        std::vector<double> lengths{0, 0, 1};
        double v = wp_volume(3, CuspMask::from_lengths(lengths), VolumeRoute::anti)
                       .evaluate_numeric(lengths);
        CHECK(xh[1].to_double() == doctest::Approx(v).epsilon(1e-12));
    }
    SUBCASE("half-integer u rejected") {
        CHECK_THROWS_AS(xhat_series(BigFloat(0.5), mu, 1), std::invalid_argument);
    }
}

TEST_CASE("distance-difference density") {
    SUBCASE("even with integrable singularity") {
        CHECK(x1_density(0.7, 1.0) == x1_density(-0.7, 1.0));
        CHECK(std::isinf(x1_density(0.0, 2.0)));
    }
    SUBCASE("normalization matches the volume") {
        double L = 1.0;
        double integral =
            2 * integrate_graded([L](double x) { return x1_density(x, L); }, 0, 41, true, false, 32);
        double pi2 = M_PI * M_PI;
        CHECK(integral == doctest::Approx(2 * pi2 + L * L / 2).epsilon(1e-9));
    }
    SUBCASE("Laplace transform matches the passage kernel") {
        double L = 1.0;
        for (double u : {0.1, 0.25}) {
            double cut = 40.0 / (1 - 2 * u) + L;
            double lap = 2 * integrate_graded(
                                 [L, u](double x) { return std::cosh(2 * u * x) * x1_density(x, L); },
                                 0, cut, true, false, 32);
            double closed = xhat_order1_closed_form(BigFloat(u), BigFloat(L)).to_double();
            CHECK(lap == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("series algebra laws") {
    CounterRng rng(404, 0);
    const int N = 10;
    for (int trial = 0; trial < 8; ++trial) {
        Series<Rat> f(N);
        f[1] = Rat(1);
        for (int k = 2; k <= N; ++k)
            f[k] = rat(static_cast<long>(rng.next_u64() % 11) - 5,
                       1 + static_cast<long>(rng.next_u64() % 4));
        SUBCASE("") {}
        Series<Rat> g = series_reversion(f);
        Series<Rat> comp = series_compose(f, g);
        for (int k = 0; k <= N; ++k) CHECK(comp[k] == (k == 1 ? Rat(1) : Rat(0)));

        Series<Rat> a(N);
        a[0] = Rat(3, 2);
        for (int k = 1; k <= N; ++k)
            a[k] = rat(static_cast<long>(rng.next_u64() % 9) - 4, 3);
        Series<Rat> inv = series_reciprocal(a);
        Series<Rat> prod = series_mul(a, inv);
        for (int k = 0; k <= N; ++k) CHECK(prod[k] == (k == 0 ? Rat(1) : Rat(0)));
    }
}

TEST_CASE("variance pipeline") {
    VariancePipeline vp = variance_pipeline(24);
    SUBCASE("deterministic three-cusp sphere") { CHECK(vp.rows[0].variance == 0.0); }
    SUBCASE("four-cusp sphere variance pi^2/6") {
        CHECK(vp.rows[1].variance == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
        CHECK(vp.xhat2[1] == Rat(4, 3));
        CHECK(vp.xhat0[1] == Rat(2));
    }
    SUBCASE("M series")
    {
        CHECK(vp.m0[0] == Rat(1));
        CHECK(vp.m1[0] == Rat(-2));  // -2 pi^2 with the grading factored out
        // M1 stays negative for small positive arguments
        double x = 0.01, acc = 0, p = 1;
        for (int k = 0; k <= 8; ++k, p *= x) acc += vp.m1[k].get_d() * p;
        CHECK(acc < 0);
    }
    SUBCASE("coefficients reproduce the cusped volumes") {
        // [x^n] of the u = 0 transform equals V_{0,3+n}(0,...,0) / n!
        for (int n = 1; n <= 3; ++n) {
            WPPolynomial v = wp_volume(n + 2, CuspMask::all(n + 2), VolumeRoute::anti);
            REQUIRE(v.terms().size() == 1);
            Rat coeff = v.terms().begin()->second;  // of pi^{2n}
            CHECK(vp.xhat0[n] == coeff / rat_factorial(n));
        }
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(variance_pipeline(0), std::invalid_argument);
    }
}

TEST_CASE("bessel evaluations") {
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(bessel_i0d(0.0) == 1.0);
    BigFloat c0 = j0_first_zero();
    CHECK(std::abs(bessel_j(0, c0).to_double()) < 1e-12);
    CHECK(c0.to_double() == doctest::Approx(2.404825557695773).epsilon(1e-14));
    CHECK(cwp_constant() == doctest::Approx(2.33925).epsilon(1e-4));
    SUBCASE("leading term of the two-cusp kernel is r") {
        // sqrt(r) J_1(2 pi sqrt(2 r)) / (sqrt(2) pi) = r - pi^2 r^2 + O(r^3)
        double r = 1e-6;
        BigFloat arg = BigFloat(2) * bf_pi() * bf_sqrt(BigFloat(2 * r));
        double w = (bf_sqrt(BigFloat(r)) / (bf_sqrt(BigFloat(2)) * bf_pi()) * bessel_j(1, arg))
                       .to_double();
        CHECK(w / r == doctest::Approx(1.0 - M_PI * M_PI * r).epsilon(1e-10));
    }
    SUBCASE("accuracy envelope") {
        CHECK_THROWS_AS(bessel_j(0, BigFloat(500.0)), std::range_error);
    }
}

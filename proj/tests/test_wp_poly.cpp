#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpspine/rng.hpp"
#include "wpspine/wp_poly.hpp"

using namespace wpspine;

namespace {

WPPolynomial monomial(int n, std::vector<int> key, Rat c) {
    WPPolynomial p(n);
    p.add_term(std::move(key), std::move(c));
    return p;
}

const PlaneTree& find_tree(const std::vector<PlaneTree>& trees, int inner_count) {
    for (const PlaneTree& t : trees)
        if (t.inner_count == inner_count) return t;
    throw std::logic_error("tree not found");
}

}  // namespace

TEST_CASE("four-boundary volume polynomial") {
    WPPolynomial expected(3);
    expected.add_term({1, 0, 0, 0}, Rat(2));
    expected.add_term({0, 1, 0, 0}, Rat(1, 2));
    expected.add_term({0, 0, 1, 0}, Rat(1, 2));
    expected.add_term({0, 0, 0, 1}, Rat(1, 2));
    CHECK(wp_volume(3, CuspMask::none(3), VolumeRoute::anti) == expected);
    CHECK(wp_volume(3, CuspMask::none(3), VolumeRoute::inclusion_exclusion) == expected);

    // two cusps specialize the polynomial
    WPPolynomial masked(3);
    masked.add_term({1, 0, 0, 0}, Rat(2));
    masked.add_term({0, 0, 0, 1}, Rat(1, 2));
    CHECK(wp_volume(3, CuspMask::from_bits("110"), VolumeRoute::anti) == masked);
}

TEST_CASE("two boundaries give the constant 1") {
    WPPolynomial v = wp_volume(2, CuspMask::all(2), VolumeRoute::anti);
    CHECK(v == monomial(2, {0, 0, 0}, Rat(1)));
    CHECK(wp_volume(2, CuspMask::none(2), VolumeRoute::inclusion_exclusion) ==
          monomial(2, {0, 0, 0}, Rat(1)));
}

TEST_CASE("evaluation") {
    WPPolynomial v = wp_volume(3, CuspMask::none(3), VolumeRoute::anti);
    double pi2 = M_PI * M_PI;
    CHECK(v.evaluate_numeric({0, 0, 0}) == doctest::Approx(2 * pi2).epsilon(1e-14));
    CHECK(v.evaluate_numeric({2, 0, 0}) == doctest::Approx(2 * pi2 + 2).epsilon(1e-14));
    CHECK(v.evaluate_numeric({2, 0, 0}) == doctest::Approx(21.7392).epsilon(1e-4));
    CHECK(WPPolynomial(3).evaluate_numeric({1, 2, 3}) == 0.0);
    CHECK_THROWS_AS(v.evaluate_numeric({1, 2}), std::invalid_argument);

    PiPoly sym = v.evaluate_symbolic({Rat(2), Rat(0), Rat(0)});
    CHECK(sym.coeff(1) == Rat(2));
    CHECK(sym.coeff(0) == Rat(2));
}

TEST_CASE("per-tree weights") {
    SUBCASE("single edge") {
        auto t = enumerate_delaunay(2, CuspMask::all(2))[0];
        CHECK(anti_tree_weight(t) == monomial(2, {0, 0, 0}, Rat(1)));
        CHECK(delaunay_polytope_volume(t) == monomial(2, {0, 0, 0}, Rat(1)));
    }
    SUBCASE("inner vertex of degree three carries pi^2") {
        auto t = find_tree(enumerate_delaunay(3, CuspMask::all(3)), 1);
        CHECK(anti_tree_weight(t) == monomial(3, {1, 0, 0, 0}, Rat(1)));
        CHECK(delaunay_polytope_volume(t) == monomial(3, {1, 0, 0, 0}, Rat(1)));
        CHECK(anti_polytope_volume(t, {}) == monomial(3, {1, 0, 0, 0}, Rat(1)));
    }
    SUBCASE("boundary vertex of degree two carries L^2/2") {
        auto t = find_tree(enumerate_delaunay(3, CuspMask::from_bits("110")), 0);
        CHECK(anti_tree_weight(t) == monomial(3, {0, 0, 0, 1}, Rat(1, 2)));
    }
}

TEST_CASE("relaxed polytope volumes factor over contracted vertices") {
    auto t = find_tree(enumerate_delaunay(4, CuspMask::all(4)), 2);
    auto inner = t.inner_inner_edges();
    REQUIRE(inner.size() == 1);
    // A = {}: (pi^2/2)^2 * 2^{n-2};  A = {e}: 2^{n-2} pi^4/4!
    CHECK(anti_polytope_volume(t, {}) == monomial(4, {2, 0, 0, 0, 0}, Rat(1)));
    CHECK(anti_polytope_volume(t, inner) == monomial(4, {2, 0, 0, 0, 0}, Rat(1, 6)));
    CHECK(delaunay_polytope_volume(t) == monomial(4, {2, 0, 0, 0, 0}, Rat(5, 6)));
}

TEST_CASE("hit-rate oracle for the constrained volume") {
    // Monte Carlo estimate of the angle-constraint probability on the
    // caterpillar: two uniform size-pi triangles, keep pairs whose facing
    // angles sum below pi. The exact rate is 5/6.
    auto t = find_tree(enumerate_delaunay(4, CuspMask::all(4)), 2);
    auto inner = t.inner_inner_edges();
    int e0 = 2 * inner[0], e1 = 2 * inner[0] + 1;
    int s0 = t.slot(e0), s1 = t.slot(e1);
    CounterRng rng(2024, 0);
    const int N = 1000000;
    int hits = 0;
    for (int i = 0; i < N; ++i) {
        double a[3], b[3];
        double sa = 0, sb = 0;
        for (double& x : a) sa += (x = rng.next_exp());
        for (double& x : b) sb += (x = rng.next_exp());
        double phi0 = M_PI * a[s0] / sa, phi1 = M_PI * b[s1] / sb;
        if (phi0 + phi1 < M_PI) ++hits;
    }
    double rate = static_cast<double>(hits) / N;
    double sigma = std::sqrt(5.0 / 6 * (1 - 5.0 / 6) / N);
    CHECK(std::abs(rate - 5.0 / 6) < 3 * sigma);
}

TEST_CASE("mask restriction agrees with masked computation") {
    for (int n : {3, 4}) {
        WPPolynomial full = wp_volume(n, CuspMask::none(n), VolumeRoute::anti);
        for (unsigned bits = 0; bits < (1u << n); ++bits) {
            CuspMask mask{std::vector<bool>(n)};
            for (int i = 0; i < n; ++i) mask.flags[i] = (bits >> i) & 1;
            CHECK(full.restrict_to_cusps(mask) == wp_volume(n, mask, VolumeRoute::anti));
        }
    }
}

TEST_CASE("per-tree volumes are positive at positive lengths") {
    CounterRng rng(99, 0);
    std::vector<double> lengths{1.3, 0.4, 2.7, 0.9};
    for (const PlaneTree& t : enumerate_delaunay(4, CuspMask::none(4))) {
        double v = delaunay_polytope_volume(t).evaluate_numeric(lengths);
        CHECK(v > 0);
    }
}

TEST_CASE("homogeneity") {
    for (int n : {3, 4, 5})
        CHECK(wp_volume(n, CuspMask::none(n), VolumeRoute::anti).is_homogeneous(n - 2));
}

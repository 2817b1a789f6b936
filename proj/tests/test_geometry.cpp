#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "wpspine/acceptance.hpp"
#include "wpspine/geometry.hpp"
#include "wpspine/sampler.hpp"

using namespace wpspine;

namespace {

const PlaneTree& tree_with_inner(int n, const CuspMask& mask, int inner_count) {
    static std::map<std::string, std::vector<PlaneTree>> cache;
    std::string key = std::to_string(n);
    for (bool b : mask.flags) key += b ? '1' : '0';
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_delaunay(n, mask)).first;
    for (const PlaneTree& t : it->second)
        if (t.inner_count == inner_count) return t;
    throw std::logic_error("tree not found");
}

Decoration symmetric_star_decoration(const PlaneTree& t) {
    Decoration d;
    d.inner_angles.assign(t.inner_count, {M_PI / 3, M_PI / 3, M_PI / 3});
    d.w.resize(t.n);
    d.v.resize(t.n);
    for (int b = 0; b < t.n; ++b) d.w[b] = {1.0};
    return d;
}

}  // namespace

TEST_CASE("decoration validation") {
    const PlaneTree& star = tree_with_inner(3, CuspMask::all(3), 1);
    std::vector<double> cusps{0, 0, 0};

    SUBCASE("symmetric star point is valid") {
        CHECK(validate_decoration(star, symmetric_star_decoration(star), cusps).ok);
    }
    SUBCASE("angle inequality violations are flagged") {
        const PlaneTree& cat = tree_with_inner(4, CuspMask::all(4), 2);
        int e = 2 * cat.inner_inner_edges()[0];
        Decoration d;
        d.inner_angles.assign(2, {0, 0, 0});
        d.w.resize(4, {1.0});
        d.v.resize(4);
        // facing angles 0.6 pi on the shared edge
        for (int iv = 0; iv < 2; ++iv) {
            int vtx = cat.n + iv;
            for (int s = 0; s < 3; ++s) d.inner_angles[iv][s] = 0.2 * M_PI;
            for (int oriented : {e, e ^ 1})
                if (cat.origin[oriented] == vtx) d.inner_angles[iv][cat.slot(oriented)] = 0.6 * M_PI;
        }
        ValidationReport rep = validate_decoration(cat, d, {0, 0, 0, 0});
        CHECK_FALSE(rep.ok);
        CHECK(rep.first_violation.find("angle inequality") != std::string::npos);
        // the same point satisfies the reversed inequality
        CHECK(validate_decoration(cat, d, {0, 0, 0, 0}, cat.inner_inner_edges()).ok);
    }
    SUBCASE("boundary simplex sums") {
        const PlaneTree& path = tree_with_inner(3, CuspMask::from_bits("110"), 0);
        Decoration d;
        d.w.resize(3);
        d.v.resize(3);
        d.w[0] = {1.0};
        d.w[1] = {1.0};
        d.w[2] = {1.0, 3.0};
        d.v[2] = {2.0, 2.0};
        CHECK(validate_decoration(path, d, {0, 0, 8}).ok);
        d.v[2] = {2.0, 3.0};
        CHECK_FALSE(validate_decoration(path, d, {0, 0, 8}).ok);
    }
    SUBCASE("shape mismatch throws") {
        Decoration d;
        CHECK_THROWS_AS(validate_decoration(star, d, cusps), std::invalid_argument);
    }
}

TEST_CASE("shear formulas") {
    SUBCASE("symmetric angles cancel the half-shear") {
        const PlaneTree& star = tree_with_inner(3, CuspMask::all(3), 1);
        Decoration d = symmetric_star_decoration(star);
        ShearAssignment s = compute_shears(star, d, {0, 0, 0});
        for (double z : s.half_shear) CHECK(z == doctest::Approx(0.0));
    }
    SUBCASE("degree-one boundary corner shear is -L") {
        double L = 1.7;
        PlaneTree t = enumerate_delaunay(2, CuspMask::from_bits("10"))[0];
        Decoration d;
        d.w.resize(2);
        d.v.resize(2);
        d.w[0] = {1.0};
        d.w[1] = {L / 2};
        d.v[1] = {L / 2};
        ShearAssignment s = compute_shears(t, d, {0, L});
        CHECK(s.corner[1][0] == doctest::Approx(-L).epsilon(1e-12));
        CHECK(s.edge_shear[0] == doctest::Approx(L / 2));
        CHECK(origin_shear_sum(t, s) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("random decorations satisfy the arc-sum identities") {
        checks::ShearSummary sum = checks::shear_random_trees(25, 42);
        CHECK(sum.max_boundary_dev < 1e-10);
        CHECK(sum.max_origin_dev < 1e-10);
    }
    SUBCASE("degenerate segment rejected") {
        PlaneTree t = enumerate_delaunay(2, CuspMask::from_bits("10"))[0];
        Decoration d;
        d.w.resize(2);
        d.v.resize(2);
        d.w[0] = {1.0};
        d.w[1] = {1e-15};
        d.v[1] = {1e-15};
        CHECK_THROWS_AS(compute_shears(t, d, {0, 2e-15}), std::invalid_argument);
    }
}

TEST_CASE("poisson brackets") {
    SUBCASE("equilateral star: adjacent edge pairs at 1/2") {
        const PlaneTree& star = tree_with_inner(3, CuspMask::all(3), 1);
        Decoration d = symmetric_star_decoration(star);
        auto entries = poisson_brackets(star, d, {0, 0, 0});
        REQUIRE(entries.size() == 3);  // three edge pairs
        for (const BracketEntry& e : entries) {
            CHECK(std::abs(e.target) == doctest::Approx(0.5));
            CHECK(e.value == doctest::Approx(e.target).epsilon(1e-12));
        }
    }
    SUBCASE("hermite cotangent identity underlies the inner bracket") {
        CHECK(checks::hermite_max_dev(10000, 7) < 1e-12);
    }
    SUBCASE("random decorated trees hit all targets") {
        checks::PoissonSummary sum = checks::poisson_random_trees(25, 11);
        CHECK(sum.max_dev < 1e-10);
        CHECK(sum.pairs > 0);
    }
    SUBCASE("finite differences cross-validate the gradients") {
        checks::PoissonSummary fd = checks::poisson_random_trees(5, 13, true);
        CHECK(fd.max_dev < 1e-4);
    }
}

TEST_CASE("distance difference") {
    SUBCASE("adjacent cusps are at equal horocycle distance") {
        PlaneTree t = enumerate_delaunay(2, CuspMask::all(2))[0];
        Decoration d;
        d.w.assign(2, {1.0});
        d.v.resize(2);
        CHECK(distance_difference(t, d, {0, 0}, 1, 2) == 0.0);
    }
    SUBCASE("star distance is the log sine ratio") {
        const PlaneTree& star = tree_with_inner(3, CuspMask::all(3), 1);
        Decoration d = symmetric_star_decoration(star);
        d.inner_angles[0] = {0.2 * M_PI, 0.3 * M_PI, 0.5 * M_PI};
        BoundaryPath p = boundary_path(star, 1, 2);
        double expect = std::log(std::sin(d.inner_angles[0][p.entrance_slot[0]])) -
                        std::log(std::sin(d.inner_angles[0][p.exit_slot[0]]));
        CHECK(distance_difference(star, d, {0, 0, 0}, 1, 2) == doctest::Approx(expect));
        CHECK(distance_difference(star, d, {0, 0, 0}, 2, 1) == doctest::Approx(-expect));
    }
    SUBCASE("additivity through a shared label") {
        const PlaneTree& star = tree_with_inner(3, CuspMask::all(3), 1);
        CounterRng rng(5, 5);
        Decoration d = sample_decoration(star, {0, 0, 0}, rng);
        double d12 = distance_difference(star, d, {0, 0, 0}, 1, 2);
        double d23 = distance_difference(star, d, {0, 0, 0}, 2, 3);
        double d13 = distance_difference(star, d, {0, 0, 0}, 1, 3);
        CHECK(d12 + d23 == doctest::Approx(d13).epsilon(1e-12));
    }
    SUBCASE("boundary passage increments") {
        // path 1-3-2 with positive length at label 3
        const PlaneTree& path = tree_with_inner(3, CuspMask::from_bits("110"), 0);
        double L = 2.4;
        Decoration d;
        d.w.resize(3);
        d.v.resize(3);
        d.w[0] = {1.0};
        d.w[1] = {1.0};
        d.w[2] = {0.8, L / 2 - 0.8};
        d.v[2] = {0.5, L / 2 - 0.5};
        REQUIRE(validate_decoration(path, d, {0, 0, L}).ok);
        BoundaryPath bp = boundary_path(path, 1, 2);
        int j = bp.entrance_slot[0];
        int deg = 2;
        int jn = (j + 1) % deg;
        double inc = d.v[2][j] - std::log(std::expm1(d.w[2][j])) +
                     std::log(-std::expm1(-d.w[2][jn]));
        CHECK(distance_difference(path, d, {0, 0, L}, 1, 2) == doctest::Approx(-inc));
    }
    SUBCASE("non-cusp labels rejected") {
        const PlaneTree& path = tree_with_inner(3, CuspMask::from_bits("110"), 0);
        Decoration d;
        d.w.resize(3, {1.0});
        d.v.resize(3);
        d.w[2] = {0.5, 0.5};
        d.v[2] = {0.5, 0.5};
        CHECK_THROWS_AS(distance_difference(path, d, {0, 0, 2}, 1, 3), std::invalid_argument);
    }
}

TEST_CASE("boundary passage factor") {
    SUBCASE("u = 0 reduces to squared simplex volumes") {
        for (int k : {2, 3, 4})
            for (int l = 2; l <= k; ++l) {
                double L = 1.3;
                double simplex = std::pow(L / 2, k - 1);
                for (int i = 2; i <= k - 1; ++i) simplex /= i;
                double expect = std::pow(2.0, k - 1) * simplex * simplex;
                CHECK(quad_E(k, l, L, 0.0) == doctest::Approx(expect).epsilon(1e-12));
            }
    }
    SUBCASE("closed form vs direct quadrature") { CHECK(checks::quadE_max_dev() < 1e-8); }
    SUBCASE("exact coefficient") { CHECK(passage_I_coeff(2, 2, 0) == Rat(1, 2)); }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(quad_E(2, 3, 1.0, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(quad_E(2, 2, 1.0, 0.6), std::invalid_argument);
    }
}

TEST_CASE("integral identities") {
    CHECK(checks::ident1_max_dev(6, 3) < 1e-8);
    CHECK(checks::ident2_max_dev() < 1e-7);
    CHECK(checks::hatxa_p1_max_dev() < 1e-7);
    CHECK(checks::hypident_exact(3, 5));
    CHECK(checks::passage_sum_exact(3, 5));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wpspine/sampler.hpp"
#include "wpspine/wp_poly.hpp"

using namespace wpspine;

TEST_CASE("tree probabilities") {
    SUBCASE("single tree gets mass one") {
        auto probs = tree_probabilities(2, {0, 0});
        REQUIRE(probs.size() == 1);
        CHECK(probs[0].weight == doctest::Approx(1.0));
    }
    SUBCASE("three-boundary weights proportional to (pi^2, pi^2, L^2/2)") {
        double L = 2.0;
        auto probs = tree_probabilities(3, {0, 0, L});
        REQUIRE(probs.size() == 3);
        double pi2 = M_PI * M_PI;
        double total = 2 * pi2 + L * L / 2;
        double sum = 0;
        for (const TreeProbability& tp : probs) {
            sum += tp.weight;
            double expect = tp.tree.inner_count == 1 ? pi2 / total : (L * L / 2) / total;
            CHECK(tp.weight == doctest::Approx(expect).epsilon(1e-12));
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("decoration sampling") {
    SUBCASE("samples land in the polytope") {
        for (const PlaneTree& t : enumerate_delaunay(4, CuspMask::from_bits("1100"))) {
            CounterRng rng(1, 0);
            std::vector<double> lengths{0, 0, 1.5, 2.5};
            Decoration d = sample_decoration(t, lengths, rng);
            CHECK(validate_decoration(t, d, lengths).ok);
        }
    }
    SUBCASE("star needs no rejections") {
        auto probs = tree_probabilities(3, {0, 0, 0});
        for (const TreeProbability& tp : probs) {
            CounterRng rng(2, 7);
            long proposals = 0;
            sample_decoration(tp.tree, {0, 0, 0}, rng, 100, &proposals);
            CHECK(proposals == 1);
        }
    }
    SUBCASE("caterpillar acceptance rate matches the volume ratio") {
        PlaneTree cat;
        for (PlaneTree& t : enumerate_delaunay(4, CuspMask::all(4)))
            if (t.inner_count == 2) cat = std::move(t);
        const int N = 20000;
        long total_proposals = 0;
        for (int i = 0; i < N; ++i) {
            CounterRng rng(3, static_cast<std::uint64_t>(i));
            long proposals = 0;
            sample_decoration(cat, {0, 0, 0, 0}, rng, 100000, &proposals);
            total_proposals += proposals;
        }
        double acc = static_cast<double>(N) / total_proposals;
        double expect = 5.0 / 6.0;  // constrained / relaxed volume
        double sigma = std::sqrt(expect * (1 - expect) / N);
        CHECK(std::abs(acc - expect) < 4 * sigma);
    }
    SUBCASE("rejection budget raises a sampling error") {
        PlaneTree cat;
        for (PlaneTree& t : enumerate_delaunay(4, CuspMask::all(4)))
            if (t.inner_count == 2) cat = std::move(t);
        CounterRng rng(4, 0);
        CHECK_THROWS_AS(sample_decoration(cat, {0, 0, 0, 0}, rng, 0), SamplingError);
    }
}

TEST_CASE("distance statistics") {
    SUBCASE("two boundaries: D identically zero") {
        SampleConfig cfg;
        cfg.n = 2;
        cfg.lengths = {0, 0};
        cfg.sample_count = 500;
        cfg.seed = 10;
        cfg.threads = 1;
        EmpiricalStats stats = sample_distance_stats(cfg);
        CHECK(stats.count == 500);
        CHECK(stats.mean() == 0.0);
        CHECK(stats.raw_moment(2) == 0.0);
    }
    SUBCASE("mean vanishes within three standard errors") {
        SampleConfig cfg;
        cfg.n = 3;
        cfg.lengths = {0, 0, 1};
        cfg.sample_count = 20000;
        cfg.seed = 11;
        cfg.threads = 2;
        EmpiricalStats stats = sample_distance_stats(cfg);
        CHECK(std::abs(stats.mean()) < 3 * stats.mean_stderr());
    }
    SUBCASE("identical seeds reproduce identical statistics") {
        SampleConfig cfg;
        cfg.n = 3;
        cfg.lengths = {0, 0, 2};
        cfg.sample_count = 4000;
        cfg.seed = 12;
        cfg.threads = 2;
        EmpiricalStats a = sample_distance_stats(cfg);
        EmpiricalStats b = sample_distance_stats(cfg);
        CHECK(a.moment_sum[0] == b.moment_sum[0]);
        CHECK(a.moment_sum[3] == b.moment_sum[3]);
        CHECK(a.bins == b.bins);
    }
    SUBCASE("cusp preconditions") {
        SampleConfig cfg;
        cfg.n = 3;
        cfg.lengths = {1, 0, 0};
        cfg.sample_count = 1;
        CHECK_THROWS_AS(sample_distance_stats(cfg), std::invalid_argument);
    }
}

TEST_CASE("goodness of fit against the closed-form density") {
    SampleConfig cfg;
    cfg.n = 3;
    cfg.lengths = {0, 0, 1};
    cfg.sample_count = 20000;
    cfg.seed = 13;
    cfg.threads = 2;
    cfg.keep_samples = true;
    EmpiricalStats stats = sample_distance_stats(cfg);

    double ks = ks_against_x1(stats, 1.0);
    CHECK(ks < 2 * 1.36 / std::sqrt(static_cast<double>(cfg.sample_count)));

    // negative control: the wrong reference length must be detected
    double ks_wrong = ks_against_x1(stats, 4.0);
    CHECK(ks_wrong > 3 * 1.36 / std::sqrt(static_cast<double>(cfg.sample_count)));

    CHECK_THROWS_AS(ks_against_x1(EmpiricalStats{}, 1.0), std::invalid_argument);
}

TEST_CASE("reference cdf is a proper distribution function") {
    X1ReferenceCdf ref(1.0);
    CHECK(ref(-30.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(ref(0.0) == doctest::Approx(0.5));
    CHECK(ref(30.0) == doctest::Approx(1.0).epsilon(1e-10));
    double pi2 = M_PI * M_PI;
    CHECK(ref.normalization() == doctest::Approx(2 * pi2 + 0.5).epsilon(1e-9));
}

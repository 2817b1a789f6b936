#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wpspine/json_io.hpp"

using namespace wpspine;

TEST_CASE("tree serialization") {
    auto trees = enumerate_delaunay(3, CuspMask::from_bits("110"));
    json j = tree_to_json(trees[0]);
    CHECK(j["n"] == 3);
    CHECK(j["boundary"].size() == 3);
    CHECK(j["boundary"][0]["label"] == 1);
    CHECK(j["code"] == canonical_code(trees[0]));
    CHECK(j["ccw_orders"].size() == static_cast<std::size_t>(trees[0].vertex_count()));
}

TEST_CASE("decoration serialization") {
    auto trees = enumerate_delaunay(3, CuspMask::from_bits("110"));
    for (const PlaneTree& t : trees) {
        CounterRng rng(21, 0);
        std::vector<double> lengths{0, 0, 2.0};
        Decoration d = sample_decoration(t, lengths, rng);
        json j = decoration_to_json(t, d);
        CHECK(j["angles"].size() == static_cast<std::size_t>(t.inner_count));
        CHECK(j["boundary"].size() == 3);
        CHECK(j["boundary"][2]["w"].size() == static_cast<std::size_t>(t.degree(2)));
    }
}

TEST_CASE("polynomial serialization") {
    WPPolynomial v = wp_volume(3, CuspMask::none(3), VolumeRoute::anti);
    json j = poly_to_json(v);
    CHECK(j["n"] == 3);
    CHECK(j["terms"].size() == 4);
    bool found_pi2 = false;
    for (const auto& term : j["terms"])
        if (term["pi2"] == 1) {
            found_pi2 = true;
            CHECK(term["num"] == "2");
            CHECK(term["den"] == "1");
        }
    CHECK(found_pi2);
}

TEST_CASE("series serialization") {
    AtomicWeight mu = AtomicWeight::parse("1:0");
    json jr = series_to_json(solve_string_exact(mu, 3));
    CHECK(jr["mode"] == "exact");
    CHECK(jr["coefficients"].size() == 4);
    json jx = series_to_json(xhat_series(BigFloat(0.2), mu, 2));
    CHECK(jx["mode"] == "real");
    CHECK(jx["coefficients"][0] == doctest::Approx(1.0));
}

TEST_CASE("digests and manifests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("payload") == fnv1a_hex("payload"));
    CHECK(fnv1a_hex("payload") != fnv1a_hex("payload2"));

    RunManifest m;
    m.command = "volume";
    m.argv = {"wpspine", "volume", "--n", "3"};
    m.add_output("stdout", "{}");
    json j = m.to_json();
    CHECK(j["command"] == "volume");
    CHECK(j["outputs"][0]["fnv64"] == fnv1a_hex("{}"));
    CHECK(j["version"] == kEngineVersion);
}

TEST_CASE("histogram csv") {
    EmpiricalStats stats;
    stats.init(0.5, 1.0, 1);
    stats.record(0.3, 0, 1, false);
    std::string csv = histogram_csv(stats);
    CHECK(csv.rfind("bin_left,bin_right,count\n", 0) == 0);
    CHECK(csv.find("\n-1,-0.5,0\n") != std::string::npos);
}

TEST_CASE("weight parsing round trip") {
    AtomicWeight mu = AtomicWeight::parse("1/2:3,2:0,0.25:1.5");
    REQUIRE(mu.atoms.size() == 3);
    CHECK(mu.atoms[0].mass == Rat(1, 2));
    CHECK(mu.atoms[2].mass == Rat(1, 4));
    CHECK(mu.atoms[2].length == Rat(3, 2));
    AtomicWeight again = AtomicWeight::parse(mu.to_string());
    CHECK(again.total_mass() == mu.total_mass());
}

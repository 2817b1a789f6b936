#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <iostream>

#include "wpspine/acceptance.hpp"

TEST_CASE("full verification battery") {
    auto results = wpspine::run_acceptance(&std::cout);
    REQUIRE(results.size() == 11);
    for (const auto& r : results) {
        INFO("[", r.id, "] ", r.name, ": ", r.detail);
        CHECK(r.pass);
    }
}

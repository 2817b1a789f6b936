#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpspine/sampler.hpp"
#include "wpspine/series.hpp"
#include "wpspine/trees.hpp"
#include "wpspine/wp_poly.hpp"

namespace wpspine {

using nlohmann::json;

json tree_to_json(const PlaneTree& t);
json poly_to_json(const WPPolynomial& p);
json decoration_to_json(const PlaneTree& t, const Decoration& d);

json series_to_json(const Series<PiPoly>& s);
json series_to_json(const Series<BigFloat>& s);

json stats_to_json(const EmpiricalStats& stats);
std::string histogram_csv(const EmpiricalStats& stats);

/// FNV-1a 64-bit digest, hex encoded; used for manifest output digests.
std::string fnv1a_hex(const std::string& payload);

struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string version;
    std::string timestamp;
    std::vector<std::pair<std::string, std::string>> outputs;  // name -> digest

    void add_output(const std::string& name, const std::string& payload) {
        outputs.emplace_back(name, fnv1a_hex(payload));
    }
    json to_json() const;
    /// Writes run.json into the directory of `anchor_path` ("" for cwd).
    void write(const std::string& anchor_path) const;
};

inline constexpr const char* kEngineVersion = "wpspine 1.0.0";

}  // namespace wpspine

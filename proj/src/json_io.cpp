#include "wpspine/json_io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wpspine {

json tree_to_json(const PlaneTree& t) {
    json j;
    j["n"] = t.n;
    json inner = json::array();
    for (int v = t.n; v < t.vertex_count(); ++v) inner.push_back({{"deg", t.degree(v)}});
    j["inner"] = std::move(inner);
    json boundary = json::array();
    for (int v = 0; v < t.n; ++v)
        boundary.push_back({{"label", t.label(v)}, {"deg", t.degree(v)}});
    j["boundary"] = std::move(boundary);
    json orders = json::array();
    for (int v = 0; v < t.vertex_count(); ++v) orders.push_back(t.ccw[v]);
    j["ccw_orders"] = std::move(orders);
    j["code"] = canonical_code(t);
    return j;
}

json decoration_to_json(const PlaneTree& t, const Decoration& d) {
    json j;
    json angles = json::array();
    for (int iv = 0; iv < t.inner_count; ++iv) angles.push_back(d.inner_angles[iv]);
    j["angles"] = std::move(angles);
    json boundary = json::array();
    for (int b = 0; b < t.n; ++b)
        boundary.push_back({{"label", t.label(b)}, {"w", d.w[b]}, {"v", d.v[b]}});
    j["boundary"] = std::move(boundary);
    return j;
}

json poly_to_json(const WPPolynomial& p) {
    json j;
    j["n"] = p.n();
    json terms = json::array();
    for (const auto& [key, coeff] : p.terms()) {
        json term;
        term["pi2"] = key[0];
        term["L2"] = std::vector<int>(key.begin() + 1, key.end());
        term["num"] = coeff.get_num().get_str();
        term["den"] = coeff.get_den().get_str();
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

json series_to_json(const Series<PiPoly>& s) {
    json coeffs = json::array();
    for (int k = 0; k <= s.order(); ++k) {
        json entry = json::array();
        for (const auto& [e, c] : s[k].terms())
            entry.push_back({{"pi2", e}, {"num", c.get_num().get_str()},
                             {"den", c.get_den().get_str()}});
        coeffs.push_back(std::move(entry));
    }
    return json{{"order", s.order()}, {"mode", "exact"}, {"coefficients", coeffs}};
}

json series_to_json(const Series<BigFloat>& s) {
    json coeffs = json::array();
    json decimals = json::array();
    for (int k = 0; k <= s.order(); ++k) {
        coeffs.push_back(s[k].to_double());
        decimals.push_back(s[k].to_string(30));
    }
    return json{{"order", s.order()},
                {"mode", "real"},
                {"coefficients", coeffs},
                {"coefficients_highprec", decimals}};
}

json stats_to_json(const EmpiricalStats& stats) {
    json j;
    j["count"] = stats.count;
    j["mean"] = stats.mean();
    j["moment2"] = stats.raw_moment(2);
    j["moment3"] = stats.raw_moment(3);
    j["moment4"] = stats.raw_moment(4);
    j["mean_stderr"] = stats.mean_stderr();
    j["underflow"] = stats.underflow;
    j["overflow"] = stats.overflow;
    json acc = json::array();
    for (std::size_t i = 0; i < stats.per_tree_counts.size(); ++i)
        acc.push_back({{"tree", i},
                       {"samples", stats.per_tree_counts[i]},
                       {"acceptance", stats.acceptance_rate(i)}});
    j["per_tree"] = std::move(acc);
    return j;
}

std::string histogram_csv(const EmpiricalStats& stats) {
    std::ostringstream out;
    out << "bin_left,bin_right,count\n";
    for (std::size_t i = 0; i < stats.bins.size(); ++i) {
        double left = -stats.range + i * stats.bin_width;
        out << left << "," << left + stats.bin_width << "," << stats.bins[i] << "\n";
    }
    return out.str();
}

std::string fnv1a_hex(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["argv"] = argv;
    if (has_seed) j["seed"] = seed;
    j["version"] = version.empty() ? kEngineVersion : version;
    j["timestamp"] = timestamp;
    json outs = json::array();
    for (const auto& [name, digest] : outputs) outs.push_back({{"name", name}, {"fnv64", digest}});
    j["outputs"] = std::move(outs);
    return j;
}

void RunManifest::write(const std::string& anchor_path) const {
    namespace fs = std::filesystem;
    fs::path dir = anchor_path.empty() ? fs::path(".") : fs::path(anchor_path).parent_path();
    if (dir.empty()) dir = ".";
    RunManifest copy = *this;
    if (copy.timestamp.empty()) {
        auto now = std::chrono::system_clock::now();
        std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        copy.timestamp = buf;
    }
    std::ofstream out(dir / "run.json");
    out << copy.to_json().dump(2) << "\n";
}

}  // namespace wpspine

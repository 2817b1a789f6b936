#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpspine/geometry.hpp"
#include "wpspine/quadrature.hpp"
#include "wpspine/rng.hpp"
#include "wpspine/trees.hpp"

namespace wpspine {

class SamplingError : public std::runtime_error {
public:
    SamplingError(const std::string& msg, double acceptance)
        : std::runtime_error(msg), acceptance_estimate(acceptance) {}
    double acceptance_estimate;
};

struct SampleConfig {
    int n = 2;
    std::vector<double> lengths;
    long sample_count = 1;
    std::uint64_t seed = 0;
    long max_rejections = 100000;
    double hist_width = 0.05;
    double hist_range = 12.8;  // histogram covers [-range, range]
    int threads = 0;           // 0: use hardware concurrency
    bool keep_samples = false;
};

struct EmpiricalStats {
    double bin_width = 0.05;
    double range = 12.8;
    std::vector<long> bins;
    long underflow = 0, overflow = 0;
    long count = 0;
    double moment_sum[4] = {0, 0, 0, 0};  // compensated sums of D^1..D^4
    double moment_comp[4] = {0, 0, 0, 0};
    std::vector<long> per_tree_counts;
    std::vector<long> per_tree_proposals;
    std::vector<double> samples;  // populated only when keep_samples is set

    void init(double width, double rng_half, std::size_t tree_count);
    void record(double d, std::size_t tree_idx, long proposals, bool keep);
    void merge(const EmpiricalStats& o);

    double raw_moment(int p) const;  // p in 1..4
    double mean() const { return raw_moment(1); }
    double mean_stderr() const;
    double second_moment_stderr() const;
    double acceptance_rate(std::size_t tree_idx) const;
};

struct TreeProbability {
    PlaneTree tree;
    double weight;  // normalized to sum 1
};

/// Trees of the constrained class weighted by their exact polytope volumes
/// evaluated at the given lengths, normalized to a probability vector.
std::vector<TreeProbability> tree_probabilities(int n, const std::vector<double>& lengths);

/// Uniform point of the tree polytope by simplex sampling plus rejection on
/// the edge angle constraints. proposals_out counts attempts.
Decoration sample_decoration(const PlaneTree& t, const std::vector<double>& lengths,
                             CounterRng& rng, long max_rejections = 100000,
                             long* proposals_out = nullptr);

/// Samples the distance difference D between the horocycles of labels 1 and 2
/// on random surfaces; labels 1 and 2 must be cusps.
EmpiricalStats sample_distance_stats(const SampleConfig& cfg);

/// Two-sided Kolmogorov-Smirnov statistic of the retained samples against
/// the normalized distance-difference density of the one-boundary surface.
double ks_against_x1(const EmpiricalStats& stats, double L);

/// Normalized reference CDF of that density (quadrature backed).
class X1ReferenceCdf {
public:
    explicit X1ReferenceCdf(double L);
    double operator()(double x) const;
    double normalization() const { return norm_; }

private:
    double cut_;
    double half_mass_;
    double norm_;
    std::shared_ptr<CumulativeFunction> cumulative_;
};

}  // namespace wpspine

#include "wpspine/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "wpspine/series.hpp"
#include "wpspine/wp_poly.hpp"

namespace wpspine {

namespace {

void kahan_add(double& sum, double& comp, double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

}  // namespace

void EmpiricalStats::init(double width, double rng_half, std::size_t tree_count) {
    bin_width = width;
    range = rng_half;
    bins.assign(static_cast<std::size_t>(std::ceil(2 * range / width)), 0);
    per_tree_counts.assign(tree_count, 0);
    per_tree_proposals.assign(tree_count, 0);
}

void EmpiricalStats::record(double d, std::size_t tree_idx, long proposals, bool keep) {
    ++count;
    double p = d;
    for (int m = 0; m < 4; ++m) {
        kahan_add(moment_sum[m], moment_comp[m], p);
        p *= d;
    }
    if (d < -range)
        ++underflow;
    else if (d >= range)
        ++overflow;
    else
        ++bins[static_cast<std::size_t>((d + range) / bin_width)];
    per_tree_counts[tree_idx] += 1;
    per_tree_proposals[tree_idx] += proposals;
    if (keep) samples.push_back(d);
}

void EmpiricalStats::merge(const EmpiricalStats& o) {
    count += o.count;
    underflow += o.underflow;
    overflow += o.overflow;
    for (std::size_t i = 0; i < bins.size(); ++i) bins[i] += o.bins[i];
    for (int m = 0; m < 4; ++m) kahan_add(moment_sum[m], moment_comp[m], o.moment_sum[m]);
    for (std::size_t i = 0; i < per_tree_counts.size(); ++i) {
        per_tree_counts[i] += o.per_tree_counts[i];
        per_tree_proposals[i] += o.per_tree_proposals[i];
    }
    samples.insert(samples.end(), o.samples.begin(), o.samples.end());
}

double EmpiricalStats::raw_moment(int p) const {
    if (p < 1 || p > 4) throw std::invalid_argument("raw_moment: p in 1..4");
    return count == 0 ? 0.0 : moment_sum[p - 1] / static_cast<double>(count);
}

double EmpiricalStats::mean_stderr() const {
    double var = raw_moment(2) - mean() * mean();
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
}

double EmpiricalStats::second_moment_stderr() const {
    double m2 = raw_moment(2), m4 = raw_moment(4);
    return std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(count));
}

double EmpiricalStats::acceptance_rate(std::size_t tree_idx) const {
    long prop = per_tree_proposals[tree_idx];
    return prop == 0 ? 1.0 : static_cast<double>(per_tree_counts[tree_idx]) / prop;
}

std::vector<TreeProbability> tree_probabilities(int n, const std::vector<double>& lengths) {
    if (n < 2) throw std::invalid_argument("tree_probabilities: need n >= 2");
    if (static_cast<int>(lengths.size()) != n)
        throw std::invalid_argument("tree_probabilities: length count mismatch");
    CuspMask mask = CuspMask::from_lengths(lengths);
    std::vector<TreeProbability> out;
    double total = 0;
    for (PlaneTree& t : enumerate_delaunay(n, mask)) {
        double w = delaunay_polytope_volume(t).evaluate_numeric(lengths);
        if (w <= 0) continue;  // cannot occur for this class; guards roundoff
        total += w;
        out.push_back({std::move(t), w});
    }
    for (TreeProbability& tp : out) tp.weight /= total;
    return out;
}

namespace {

// Uniform point of the open simplex of size `size` with k entries.
std::vector<double> sample_simplex(int k, double size, CounterRng& rng) {
    std::vector<double> x(k);
    double s = 0;
    for (int i = 0; i < k; ++i) {
        x[i] = rng.next_exp();
        s += x[i];
    }
    for (int i = 0; i < k; ++i) x[i] *= size / s;
    return x;
}

}  // namespace

Decoration sample_decoration(const PlaneTree& t, const std::vector<double>& lengths,
                             CounterRng& rng, long max_rejections, long* proposals_out) {
    if (static_cast<int>(lengths.size()) != t.n)
        throw std::invalid_argument("sample_decoration: length count mismatch");
    Decoration d;
    d.inner_angles.resize(t.inner_count);
    d.w.resize(t.n);
    d.v.resize(t.n);
    for (int b = 0; b < t.n; ++b) {
        int deg = t.degree(b);
        if (lengths[b] == 0.0) {
            d.w[b] = sample_simplex(deg, 1.0, rng);
        } else {
            d.w[b] = sample_simplex(deg, lengths[b] / 2, rng);
            d.v[b] = sample_simplex(deg, lengths[b] / 2, rng);
        }
    }

    std::vector<int> inner_edges = t.inner_inner_edges();
    long proposals = 0;
    for (;;) {
        ++proposals;
        if (proposals > max_rejections) {
            double acc = 1.0 / static_cast<double>(proposals);
            throw SamplingError("sample_decoration: rejection budget exceeded", acc);
        }
        for (int iv = 0; iv < t.inner_count; ++iv)
            d.inner_angles[iv] = sample_simplex(t.degree(t.n + iv), M_PI, rng);
        bool ok = true;
        for (int idx : inner_edges)
            if (!(d.phi(t, 2 * idx) + d.phi(t, 2 * idx + 1) < M_PI)) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    if (proposals_out) *proposals_out = proposals;
    return d;
}

namespace {

EmpiricalStats run_chunk(const SampleConfig& cfg, const std::vector<TreeProbability>& trees,
                         const std::vector<double>& cumulative, long lo, long hi) {
    EmpiricalStats stats;
    stats.init(cfg.hist_width, cfg.hist_range, trees.size());
    for (long i = lo; i < hi; ++i) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        double pick = rng.next_unit();
        std::size_t tree_idx =
            std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin();
        if (tree_idx >= trees.size()) tree_idx = trees.size() - 1;
        long proposals = 0;
        Decoration d =
            sample_decoration(trees[tree_idx].tree, cfg.lengths, rng, cfg.max_rejections,
                              &proposals);
        double D = distance_difference(trees[tree_idx].tree, d, cfg.lengths, 1, 2);
        stats.record(D, tree_idx, proposals, cfg.keep_samples);
    }
    return stats;
}

}  // namespace

EmpiricalStats sample_distance_stats(const SampleConfig& cfg) {
    if (cfg.sample_count < 1) throw std::invalid_argument("sample_distance_stats: empty run");
    if (cfg.n < 2 || static_cast<int>(cfg.lengths.size()) != cfg.n)
        throw std::invalid_argument("sample_distance_stats: bad configuration");
    if (cfg.lengths[0] != 0.0 || cfg.lengths[1] != 0.0)
        throw std::invalid_argument("sample_distance_stats: labels 1 and 2 must be cusps");

    std::vector<TreeProbability> trees = tree_probabilities(cfg.n, cfg.lengths);
    std::vector<double> cumulative(trees.size());
    double acc = 0;
    for (std::size_t i = 0; i < trees.size(); ++i) {
        acc += trees[i].weight;
        cumulative[i] = acc;
    }
    cumulative.back() = 1.0;

    int threads = cfg.threads > 0 ? cfg.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    long per = (cfg.sample_count + threads - 1) / threads;

    std::vector<EmpiricalStats> partial(threads);
    std::vector<std::thread> pool;
    for (int tix = 0; tix < threads; ++tix) {
        long lo = tix * per, hi = std::min<long>(cfg.sample_count, lo + per);
        if (lo >= hi) {
            partial[tix].init(cfg.hist_width, cfg.hist_range, trees.size());
            continue;
        }
        pool.emplace_back([&, tix, lo, hi] { partial[tix] = run_chunk(cfg, trees, cumulative, lo, hi); });
    }
    for (std::thread& th : pool) th.join();

    EmpiricalStats stats;
    stats.init(cfg.hist_width, cfg.hist_range, trees.size());
    for (const EmpiricalStats& p : partial) stats.merge(p);
    return stats;
}

X1ReferenceCdf::X1ReferenceCdf(double L) {
    cut_ = 40.0 + L / 2;
    cumulative_ = std::make_shared<CumulativeFunction>(
        [L](double x) { return x1_density(x, L); }, 0.0, cut_, true, false);
    half_mass_ = cumulative_->total();
    norm_ = 2 * half_mass_;
}

double X1ReferenceCdf::operator()(double x) const {
    double c = (*cumulative_)(std::abs(x)) / half_mass_;  // in [0, 1]
    return x >= 0 ? 0.5 + 0.5 * c : 0.5 - 0.5 * c;
}

double ks_against_x1(const EmpiricalStats& stats, double L) {
    if (stats.samples.empty())
        throw std::invalid_argument("ks_against_x1: run with keep_samples enabled");
    std::vector<double> xs = stats.samples;
    std::sort(xs.begin(), xs.end());
    X1ReferenceCdf ref(L);
    double n = static_cast<double>(xs.size());
    double ks = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double F = ref(xs[i]);
        ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
        ks = std::max(ks, std::abs(static_cast<double>(i + 1) / n - F));
    }
    return ks;
}

}  // namespace wpspine

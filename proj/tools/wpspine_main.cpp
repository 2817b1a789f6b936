#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wpspine/acceptance.hpp"
#include "wpspine/bessel.hpp"
#include "wpspine/json_io.hpp"
#include "wpspine/sampler.hpp"
#include "wpspine/series.hpp"
#include "wpspine/trees.hpp"
#include "wpspine/wp_poly.hpp"

namespace {

using namespace wpspine;

std::vector<double> parse_lengths(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("WPSPINE_THREADS")) return std::atoi(env);
    return 0;
}

void emit(const std::string& payload, const std::string& out_path, RunManifest& manifest,
          const std::string& name) {
    if (out_path.empty()) {
        std::cout << payload;
        manifest.add_output(name.empty() ? "stdout" : name, payload);
    } else {
        std::ofstream f(out_path);
        f << payload;
        manifest.add_output(out_path, payload);
    }
}

int run_trees(int n, const std::string& cusps, bool anti, const std::string& out_path,
              RunManifest& manifest) {
    CuspMask mask = cusps.empty() ? CuspMask::none(n) : CuspMask::from_bits(cusps);
    if (mask.n() != n) throw std::invalid_argument("trees: --cusps length must equal --n");
    std::vector<PlaneTree> trees =
        anti ? enumerate_anti(n, mask) : enumerate_delaunay(n, mask);
    json arr = json::array();
    for (const PlaneTree& t : trees) arr.push_back(tree_to_json(t));
    emit(arr.dump(2) + "\n", out_path, manifest, "trees.json");
    return 0;
}

int run_volume(int n, const std::string& cusps, const std::string& route,
               const std::string& eval_csv, const std::string& out_path, RunManifest& manifest) {
    CuspMask mask = cusps.empty() ? CuspMask::none(n) : CuspMask::from_bits(cusps);
    if (mask.n() != n) throw std::invalid_argument("volume: --cusps length must equal --n");
    VolumeRoute r = route == "ie" ? VolumeRoute::inclusion_exclusion : VolumeRoute::anti;
    WPPolynomial p = wp_volume(n, mask, r);
    json j = poly_to_json(p);
    j["route"] = route;
    if (!eval_csv.empty()) {
        std::vector<double> lengths = parse_lengths(eval_csv);
        j["value"] = p.evaluate_numeric(lengths);
    }
    emit(j.dump(2) + "\n", out_path, manifest, "volume.json");
    return 0;
}

int run_series(const std::string& mu_spec, int order, double u, const std::string& what,
               const std::string& out_path, RunManifest& manifest) {
    AtomicWeight mu = AtomicWeight::parse(mu_spec);
    json j;
    if (what == "R") {
        j = series_to_json(solve_string_exact(mu, order));
    } else if (what == "Z") {
        Series<PiPoly> R = solve_string_exact(mu, order);
        j = series_to_json(z_of_series_exact(R, mu));
        j["note"] = "residual of the string equation; identically zero";
    } else if (what == "eta") {
        j = series_to_json(eta_series(BigFloat(u), mu, order));
    } else if (what == "xhat") {
        j = series_to_json(xhat_series(BigFloat(u), mu, order));
    } else {
        throw std::invalid_argument("series: --what must be R|Z|eta|xhat");
    }
    j["mu"] = mu.to_string();
    if (what == "eta" || what == "xhat") j["u"] = u;
    emit(j.dump(2) + "\n", out_path, manifest, "series.json");
    return 0;
}

int run_variance(int nmax, const std::string& out_path, RunManifest& manifest) {
    VariancePipeline vp = variance_pipeline(nmax);
    std::ostringstream csv;
    csv << "n,variance,normalized_ratio\n";
    csv << std::setprecision(15);
    for (const VarianceRow& row : vp.rows)
        csv << row.n << "," << row.variance << "," << row.ratio << "\n";
    emit(csv.str(), out_path, manifest, "variance.csv");
    return 0;
}

int run_sample(const SampleConfig& cfg, const std::string& out_path, double ks_L, bool do_ks,
               RunManifest& manifest) {
    SampleConfig run_cfg = cfg;
    if (do_ks) run_cfg.keep_samples = true;
    EmpiricalStats stats = sample_distance_stats(run_cfg);
    std::string csv = histogram_csv(stats);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << csv;
        manifest.add_output(out_path, csv);
    }
    json summary = stats_to_json(stats);
    summary["seed"] = cfg.seed;
    if (do_ks) summary["ks_against_reference"] = ks_against_x1(stats, ks_L);
    if (out_path.empty()) summary["histogram_csv"] = csv;
    std::string payload = summary.dump(2) + "\n";
    std::cout << payload;
    manifest.add_output("summary.json", payload);
    return 0;
}

int run_verify(const std::string& what, std::uint64_t seed, int trials, int n) {
    using namespace wpspine::checks;
    struct Row {
        std::string name;
        double dev;
        double tol;
    };
    std::vector<Row> rows;
    if (what == "shears" || what == "all") {
        ShearSummary s = shear_random_trees(trials, seed, n);
        rows.push_back({"boundary corner-shear sum", s.max_boundary_dev, 1e-10});
        rows.push_back({"origin arc-shear sum", s.max_origin_dev, 1e-10});
    }
    if (what == "poisson" || what == "all") {
        PoissonSummary p = poisson_random_trees(trials, seed, false, n);
        rows.push_back({"bracket targets (" + std::to_string(p.pairs) + " pairs)", p.max_dev,
                        1e-10});
        rows.push_back({"hermite cotangent identity", hermite_max_dev(10000, seed), 1e-12});
    }
    if (what == "identities" || what == "all") {
        rows.push_back({"circle sine-ratio average", ident1_max_dev(trials, seed), 1e-8});
        rows.push_back({"ordered-region reduction", ident2_max_dev(), 1e-7});
        rows.push_back({"bessel kernel, single passage", hatxa_p1_max_dev(), 1e-7});
        rows.push_back({"hypergeometric sum", hypident_exact(6, 8) ? 0.0 : 1.0, 0.5});
        rows.push_back({"passage product expansion", passage_sum_exact(6, 8) ? 0.0 : 1.0, 0.5});
    }
    if (what == "E" || what == "all") {
        rows.push_back({"passage factor vs 2-D quadrature", quadE_max_dev(), 1e-8});
    }
    if (rows.empty()) throw std::invalid_argument("verify: --what must be shears|poisson|identities|E|all");
    bool ok = true;
    for (const Row& r : rows) {
        bool pass = r.dev < r.tol;
        ok = ok && pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(42) << r.name
                  << " max dev " << std::scientific << std::setprecision(3) << r.dev
                  << "  (tol " << r.tol << ")\n";
    }
    return ok ? 0 : 1;
}

int run_reproduce(const std::string& json_path, RunManifest& manifest) {
    std::vector<CriterionResult> results = run_acceptance(&std::cout);
    bool all = true;
    json arr = json::array();
    for (const CriterionResult& r : results) {
        all = all && r.pass;
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
    }
    json report{{"version", kEngineVersion}, {"all_pass", all}, {"criteria", arr}};
    std::string payload = report.dump(2) + "\n";
    if (!json_path.empty()) {
        std::ofstream f(json_path);
        f << payload;
        manifest.add_output(json_path, payload);
    }
    std::cout << (all ? "ALL CRITERIA PASS\n" : "CRITERION FAILURE\n");
    if (!all)
        for (const CriterionResult& r : results)
            if (!r.pass) std::cout << "failed: [" << r.id << "] " << r.name << "\n";
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and stochastic engine for genus-0 hyperbolic surface volumes"};
    app.require_subcommand(1);

    RunManifest manifest;
    manifest.version = kEngineVersion;
    for (int i = 0; i < argc; ++i) manifest.argv.push_back(argv[i]);

    // trees
    auto* trees_cmd = app.add_subcommand("trees", "Enumerate the decorated tree families");
    int t_n = 3;
    std::string t_cusps, t_out;
    bool t_anti = false;
    trees_cmd->add_option("--n", t_n, "number of labeled boundary vertices")->required();
    trees_cmd->add_option("--cusps", t_cusps, "bitmask, 1 marks a cusp (default: none)");
    trees_cmd->add_flag("--anti", t_anti, "enumerate the relaxed class (inner degree >= 3)");
    trees_cmd->add_option("--out", t_out, "output file (default stdout)");

    // volume
    auto* vol_cmd = app.add_subcommand("volume", "Exact Weil-Petersson volume polynomial");
    int v_n = 3;
    std::string v_cusps, v_route = "anti", v_eval, v_out;
    vol_cmd->add_option("--n", v_n)->required();
    vol_cmd->add_option("--cusps", v_cusps, "bitmask, 1 marks a cusp");
    vol_cmd->add_option("--route", v_route, "anti|ie")->check(CLI::IsMember({"anti", "ie"}));
    vol_cmd->add_option("--eval", v_eval, "comma-separated lengths for numeric evaluation");
    vol_cmd->add_option("--out", v_out);

    // series (+ variance sub)
    auto* ser_cmd = app.add_subcommand("series", "Generating-function engine");
    std::string s_mu, s_what = "R", s_out;
    int s_order = 8;
    double s_u = 0.0;
    ser_cmd->add_option("--mu", s_mu, "atomic weight, e.g. 1:0 or 1/2:1,1/2:2");
    ser_cmd->add_option("--order", s_order, "truncation order");
    ser_cmd->add_option("--u", s_u, "Laplace parameter for eta/xhat");
    ser_cmd->add_option("--what", s_what)->check(CLI::IsMember({"R", "Z", "eta", "xhat"}));
    ser_cmd->add_option("--out", s_out);
    auto* var_cmd = ser_cmd->add_subcommand("variance", "Distance-difference variance table");
    int var_nmax = 200;
    std::string var_out;
    var_cmd->add_option("--nmax", var_nmax);
    var_cmd->add_option("--out", var_out);

    // sample
    auto* samp_cmd = app.add_subcommand("sample", "Random surfaces through the tree bijection");
    SampleConfig cfg;
    std::string sa_lengths, sa_out;
    double sa_ks = 1.0;
    bool sa_do_ks = false;
    long sa_count = 10000;
    std::uint64_t sa_seed = 1;
    samp_cmd->add_option("--n", cfg.n)->required();
    samp_cmd->add_option("--lengths", sa_lengths, "comma-separated boundary lengths")->required();
    samp_cmd->add_option("--count", sa_count)->required();
    samp_cmd->add_option("--seed", sa_seed);
    samp_cmd->add_option("--threads", cfg.threads, "worker threads (env WPSPINE_THREADS)");
    samp_cmd->add_option("--max-rejections", cfg.max_rejections);
    samp_cmd->add_option("--hist-width", cfg.hist_width);
    samp_cmd->add_option("--hist-range", cfg.hist_range);
    samp_cmd->add_option("--out", sa_out, "histogram CSV path");
    auto* ks_opt = samp_cmd->add_option("--ks", sa_ks,
                                        "compare against the one-boundary density at this length");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "Geometry identity checks");
    std::string ve_what = "all";
    std::uint64_t ve_seed = 7;
    int ve_trials = 40, ve_n = 0;
    ver_cmd->add_option("--what", ve_what)->check(CLI::IsMember({"shears", "poisson", "identities", "E", "all"}));
    ver_cmd->add_option("--seed", ve_seed);
    ver_cmd->add_option("--n", ve_n, "fix the boundary count of random trees (default: mixed 2..6)")
        ->check(CLI::Range(0, 6));
    ver_cmd->add_option("--trials", ve_trials);

    // reproduce
    auto* rep_cmd = app.add_subcommand("reproduce", "Run the full verification battery");
    std::string rep_json;
    rep_cmd->add_option("--json", rep_json, "machine-readable report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        int rc = 1;
        if (*trees_cmd) {
            manifest.command = "trees";
            rc = run_trees(t_n, t_cusps, t_anti, t_out, manifest);
            manifest.write(t_out);
        } else if (*vol_cmd) {
            manifest.command = "volume";
            rc = run_volume(v_n, v_cusps, v_route, v_eval, v_out, manifest);
            manifest.write(v_out);
        } else if (*ser_cmd) {
            if (*var_cmd) {
                manifest.command = "series variance";
                rc = run_variance(var_nmax, var_out, manifest);
                manifest.write(var_out);
            } else {
                manifest.command = "series";
                rc = run_series(s_mu, s_order, s_u, s_what, s_out, manifest);
                manifest.write(s_out);
            }
        } else if (*samp_cmd) {
            manifest.command = "sample";
            manifest.seed = sa_seed;
            manifest.has_seed = true;
            cfg.lengths = parse_lengths(sa_lengths);
            cfg.sample_count = sa_count;
            cfg.seed = sa_seed;
            if (cfg.threads == 0) cfg.threads = default_threads();
            sa_do_ks = ks_opt->count() > 0;
            rc = run_sample(cfg, sa_out, sa_ks, sa_do_ks, manifest);
            manifest.write(sa_out);
        } else if (*ver_cmd) {
            manifest.command = "verify";
            manifest.seed = ve_seed;
            manifest.has_seed = true;
            rc = run_verify(ve_what, ve_seed, ve_trials, ve_n);
            manifest.write("");
        } else if (*rep_cmd) {
            manifest.command = "reproduce";
            rc = run_reproduce(rep_json, manifest);
            manifest.write(rep_json);
        }
        return rc;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace wpspine {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the full verification battery in order, streaming one line per
/// criterion to `progress` when given. Never throws on criterion failure.
std::vector<CriterionResult> run_acceptance(std::ostream* progress);

/// Reusable checks behind the criteria, also exposed through the CLI
/// `verify` subcommand.
namespace checks {

/// Max deviation of cot a cot b + cot b cot c + cot c cot a from 1 over
/// random angle triples summing to pi (bounded away from the corners so
/// double precision resolves the identity).
double hermite_max_dev(int trials, std::uint64_t seed);

struct PoissonSummary {
    double max_dev = 0;
    long pairs = 0;
};
/// fixed_n = 0 draws the boundary count uniformly from 2..6.
PoissonSummary poisson_random_trees(int tree_count, std::uint64_t seed,
                                    bool finite_difference = false, int fixed_n = 0);

struct ShearSummary {
    double max_boundary_dev = 0;  // |sum_j z_c + L_b|
    double max_origin_dev = 0;    // |2 sum z_e + sum z_c|
};
ShearSummary shear_random_trees(int tree_count, std::uint64_t seed, int fixed_n = 0);

/// Sine-ratio average over the circle vs its closed form, random nested
/// tuples with p intervals.
double ident1_max_dev(int tuples, std::uint64_t seed);

/// Ordered-region integral Z_p[f] for f(theta) = theta, p = 1, 2, versus the
/// simplex form; both sides by quadrature.
double ident2_max_dev();

/// p = 1 ordered-region integral of the Bessel kernel against its reduced
/// form, coefficient-wise in r through order 3.
double hatxa_p1_max_dev();

/// Exact rational hypergeometric summation identity.
bool hypident_exact(int p_max, int k_max);

/// Exact u-expansion of sum_l u^2 I_{k,l}(-u) I_{k,l}(u) against the closed
/// coefficient 2 p!/((2p)! (k-2)! (k+p-2)!).
bool passage_sum_exact(int p_max, int k_max);

/// Boundary passage factor: closed form vs 2-D quadrature.
double quadE_max_dev();

}  // namespace checks

}  // namespace wpspine

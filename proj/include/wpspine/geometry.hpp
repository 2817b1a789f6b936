#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wpspine/rational.hpp"
#include "wpspine/trees.hpp"

namespace wpspine {

/// Decoration of a plane tree: a point of the associated polytope.
/// Angles are stored per inner vertex aligned with the ccw slots; oriented
/// edges starting at boundary vertices implicitly carry angle 0. Boundary
/// vertices of positive length carry two simplex points (w, v) of size L/2;
/// cusps are normalized to w = (1) with no v.
struct Decoration {
    std::vector<std::vector<double>> inner_angles;  // [v - n][slot]
    std::vector<std::vector<double>> w;             // [boundary vertex][slot]
    std::vector<std::vector<double>> v;             // [boundary vertex][slot], empty for cusps

    double phi(const PlaneTree& t, int e) const {
        int o = t.origin[e];
        return t.is_boundary(o) ? 0.0 : inner_angles[o - t.n][t.slot(e)];
    }
};

struct ValidationReport {
    bool ok = true;
    std::string first_violation;  // names the first failed constraint
};

/// Checks membership of the decoration in the tree's polytope. With
/// anti_edges absent this is the constrained (Delaunay) polytope; otherwise
/// the listed edges carry the reversed inequality and the rest none.
ValidationReport validate_decoration(const PlaneTree& t, const Decoration& d,
                                     const std::vector<double>& lengths,
                                     const std::optional<std::vector<int>>& anti_edges = {});

/// Half-shears per oriented edge, shears per edge, and corner shears.
/// corner[b][j] is attached to the corner between the ccw slots j and j+1.
struct ShearAssignment {
    std::vector<double> half_shear;
    std::vector<double> edge_shear;
    std::vector<std::vector<double>> corner;
};

ShearAssignment compute_shears(const PlaneTree& t, const Decoration& d,
                               const std::vector<double>& lengths);

/// Sign conventions for the closed chain of arcs around the origin, frozen
/// by the calibration tests on the smallest trees: each edge arc enters
/// twice with sign +1, each corner arc once with sign +1, and the per-
/// boundary corner sum carries sign -1 relative to the boundary length.
inline constexpr int kEdgeArcSign = +1;
inline constexpr int kCornerArcSign = +1;
inline constexpr int kBoundaryCornerSumSign = -1;

/// kEdgeArcSign * 2 * sum(z_e) + kCornerArcSign * sum(z_c); identically zero.
double origin_shear_sum(const PlaneTree& t, const ShearAssignment& s);

/// One Poisson bracket of two shear coordinate functions together with its
/// structure-constant target (+-1/2 or 0).
struct BracketEntry {
    bool first_is_corner = false;
    int first_index = 0;   // edge index, or boundary vertex for corners
    int first_sub = 0;     // corner slot
    bool second_is_corner = false;
    int second_index = 0;
    int second_sub = 0;
    double value = 0;
    double target = 0;
};

/// All pairwise brackets of the edge and corner shear functions under the
/// vertex-local bivector, evaluated in the canonical chart. The finite-
/// difference mode replaces the closed-form gradients by central differences
/// (step 1e-6) for cross-validation.
std::vector<BracketEntry> poisson_brackets(const PlaneTree& t, const Decoration& d,
                                           const std::vector<double>& lengths,
                                           bool finite_difference = false);

/// Distance difference D = d(h_i, origin) - d(h_j, origin) between the
/// unit-length horocycles of two cusp labels, read off the decoration along
/// the tree path (log-space increments only).
double distance_difference(const PlaneTree& t, const Decoration& d,
                           const std::vector<double>& lengths, int label_i, int label_j);

/// Laplace factor of a boundary passage: I_{k,l}(u, L) as a truncated series
/// sum_m u^m L^{k+m-1} 2^{1-k}/(k+m-1)! C(l+m-2, m), certified tail.
double passage_I(int k, int l, double u, double L);

/// Exact coefficient of u^m in I_{k,l}(u, L) with L symbolic: the returned
/// rational multiplies L^{k+m-1}.
Rat passage_I_coeff(int k, int l, int m);

/// Boundary passage factor E_{k,l}(L, u) = 2^{k-1} I(u) I~(u) with
/// I~(u) = (2 pi u / sin 2 pi u) I(-u).
double quad_E(int k, int l, double L, double u);

/// Independent 2-D tensor quadrature of the defining integral of E_{2,2}.
double quad_E22_quadrature(double L, double u);

}  // namespace wpspine

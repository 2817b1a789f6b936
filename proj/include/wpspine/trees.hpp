#pragma once

#include <string>
#include <vector>

namespace wpspine {

/// Which boundary labels are cusps (zero length). flags[i] refers to label i+1.
struct CuspMask {
    std::vector<bool> flags;

    int n() const { return static_cast<int>(flags.size()); }
    bool is_cusp(int label) const { return flags.at(label - 1); }

    static CuspMask none(int n) { return CuspMask{std::vector<bool>(n, false)}; }
    static CuspMask all(int n) { return CuspMask{std::vector<bool>(n, true)}; }
    static CuspMask from_lengths(const std::vector<double>& lengths);
    /// Parses a bit string like "110": '1' marks a cusp.
    static CuspMask from_bits(const std::string& bits);
};

/// Bicolored plane tree with n labeled boundary (white) vertices and
/// unlabeled inner (red) vertices.
///
/// Vertex ids: 0..n-1 are boundary vertices (label = id+1), the rest inner.
/// Oriented edge ids are dense 0..2E-1 with reversal = id^1; ccw[v] lists the
/// oriented edges starting at v in counterclockwise order.
struct PlaneTree {
    int n = 0;
    int inner_count = 0;
    std::vector<std::vector<int>> ccw;
    std::vector<int> origin;  // origin[e] = vertex the oriented edge e starts at

    int vertex_count() const { return n + inner_count; }
    int edge_count() const { return static_cast<int>(origin.size()) / 2; }
    static int reverse(int e) { return e ^ 1; }
    int head(int e) const { return origin[e ^ 1]; }
    int degree(int v) const { return static_cast<int>(ccw[v].size()); }
    bool is_boundary(int v) const { return v < n; }
    bool is_inner(int v) const { return v >= n; }
    int label(int v) const { return v + 1; }

    /// Index of oriented edge e within ccw[origin[e]].
    int slot(int e) const;
    /// True iff both endpoints of unoriented edge idx are inner vertices.
    bool is_inner_inner(int edge_idx) const {
        return is_inner(origin[2 * edge_idx]) && is_inner(origin[2 * edge_idx + 1]);
    }
    std::vector<int> inner_inner_edges() const;
};

enum class TreeClass {
    delaunay,  // inner vertices of degree exactly 3
    anti,      // inner vertices of degree >= 3
};

/// All trees of the class, one per plane isomorphism type (label and cyclic
/// orders preserved), sorted by canonical code.
std::vector<PlaneTree> enumerate_trees(int n, const CuspMask& mask, TreeClass cls);

inline std::vector<PlaneTree> enumerate_delaunay(int n, const CuspMask& mask) {
    return enumerate_trees(n, mask, TreeClass::delaunay);
}
inline std::vector<PlaneTree> enumerate_anti(int n, const CuspMask& mask) {
    return enumerate_trees(n, mask, TreeClass::anti);
}

/// Injective on isomorphism classes; a DFS parenthesis/color/label string,
/// minimized over the cyclic rotations at the root (boundary vertex 1).
std::string canonical_code(const PlaneTree& t);

/// Label-free canonical code, minimized over all corner rootings. Two trees
/// share a shape code iff they are plane-isomorphic ignoring boundary labels.
std::string shape_code(const PlaneTree& t);

struct ContractionResult {
    PlaneTree tree;
    /// Per inner vertex of the contracted tree: how many inner vertices of the
    /// input were merged into it (1 if untouched).
    std::vector<int> merged_inner_count;
    /// Per surviving edge index: the edge index it carried in the input tree,
    /// which identifies entrance/exit edges across the contraction.
    std::vector<int> original_edge;
};

/// Contracts the given unoriented edges, splicing the cyclic orders. Every
/// edge in the set must join two inner vertices.
ContractionResult contract_edges(const PlaneTree& t, const std::vector<int>& edge_idxs);

struct BoundaryPath {
    std::vector<int> vertices;       // path endpoints inclusive
    std::vector<int> edges;          // edges[k] oriented from vertices[k] to vertices[k+1]
    std::vector<int> entrance_slot;  // per intermediate vertex: slot of the edge back toward the start
    std::vector<int> exit_slot;      // per intermediate vertex: slot of the edge onward
};

/// Unique simple path between the boundary vertices labeled i and j.
BoundaryPath boundary_path(const PlaneTree& t, int label_i, int label_j);

/// Exact combinatorial identity sum_v (2 - deg v); equals 2 for every tree.
int tree_identity_sum(const PlaneTree& t);

}  // namespace wpspine

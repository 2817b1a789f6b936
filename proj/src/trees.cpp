#include "wpspine/trees.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace wpspine {

CuspMask CuspMask::from_lengths(const std::vector<double>& lengths) {
    CuspMask m;
    m.flags.reserve(lengths.size());
    for (double L : lengths) {
        if (L < 0) throw std::invalid_argument("CuspMask: negative length");
        m.flags.push_back(L == 0.0);
    }
    return m;
}

CuspMask CuspMask::from_bits(const std::string& bits) {
    CuspMask m;
    m.flags.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("CuspMask: bad bit string");
        m.flags.push_back(c == '1');
    }
    return m;
}

int PlaneTree::slot(int e) const {
    const auto& lst = ccw[origin[e]];
    for (int i = 0; i < static_cast<int>(lst.size()); ++i)
        if (lst[i] == e) return i;
    throw std::logic_error("PlaneTree::slot: edge not incident");
}

std::vector<int> PlaneTree::inner_inner_edges() const {
    std::vector<int> out;
    for (int idx = 0; idx < edge_count(); ++idx)
        if (is_inner_inner(idx)) out.push_back(idx);
    return out;
}

int tree_identity_sum(const PlaneTree& t) {
    int s = 0;
    for (int v = 0; v < t.vertex_count(); ++v) s += 2 - t.degree(v);
    return s;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

struct GenNode {
    int white_label = -1;  // -1 marks an inner vertex
    std::vector<GenNode> children;
};

using NodeList = std::vector<GenNode>;

struct Generator {
    int n;
    const CuspMask& mask;
    TreeClass cls;
    std::map<unsigned, NodeList> memo;  // label bitmask -> planted trees

    explicit Generator(int n_, const CuspMask& m, TreeClass c) : n(n_), mask(m), cls(c) {}

    // Every surjective assignment of `elems` onto parts 0..m-1.
    static void surjections(const std::vector<int>& elems, int m,
                            std::vector<std::vector<std::vector<int>>>& out) {
        std::vector<int> assign(elems.size(), 0);
        std::vector<std::vector<int>> parts(m);
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == elems.size()) {
                for (const auto& p : parts)
                    if (p.empty()) return;
                out.push_back(parts);
                return;
            }
            for (int k = 0; k < m; ++k) {
                parts[k].push_back(elems[i]);
                self(self, i + 1);
                parts[k].pop_back();
            }
        };
        rec(rec, 0);
    }

    static unsigned bitmask(const std::vector<int>& labels) {
        unsigned b = 0;
        for (int l : labels) b |= 1u << l;
        return b;
    }

    // All planted trees whose white labels are exactly `labels`.
    const NodeList& planted(const std::vector<int>& labels) {
        unsigned key = bitmask(labels);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;

        NodeList result;
        // White root choices.
        for (int lbl : labels) {
            std::vector<int> rest;
            for (int o : labels)
                if (o != lbl) rest.push_back(o);
            if (mask.is_cusp(lbl)) {
                if (rest.empty()) result.push_back(GenNode{lbl, {}});
                continue;
            }
            if (rest.empty()) {
                result.push_back(GenNode{lbl, {}});
                continue;
            }
            for (int m = 1; m <= static_cast<int>(rest.size()); ++m)
                append_combinations(result, lbl, rest, m);
        }
        // Inner root: m children, degree m+1 >= 3.
        if (labels.size() >= 2) {
            int max_m = static_cast<int>(labels.size());
            int lo = 2, hi = (cls == TreeClass::delaunay) ? 2 : max_m;
            for (int m = lo; m <= std::min(hi, max_m); ++m)
                append_combinations(result, -1, labels, m);
        }
        return memo.emplace(key, std::move(result)).first->second;
    }

    void append_combinations(NodeList& result, int root_label, const std::vector<int>& elems,
                             int m) {
        std::vector<std::vector<std::vector<int>>> partitions;
        surjections(elems, m, partitions);
        for (const auto& parts : partitions) {
            std::vector<const NodeList*> options;
            options.reserve(parts.size());
            for (const auto& p : parts) options.push_back(&planted(p));
            std::vector<std::size_t> pick(parts.size(), 0);
            bool done = false;
            while (!done) {
                GenNode node{root_label, {}};
                bool viable = true;
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (options[i]->empty()) {
                        viable = false;
                        break;
                    }
                    node.children.push_back((*options[i])[pick[i]]);
                }
                if (viable) result.push_back(std::move(node));
                // advance the mixed-radix counter
                done = true;
                for (std::size_t i = 0; i < parts.size(); ++i) {
                    if (options[i]->empty()) break;
                    if (++pick[i] < options[i]->size()) {
                        done = false;
                        break;
                    }
                    pick[i] = 0;
                }
            }
        }
    }
};

struct Builder {
    PlaneTree t;
    int next_inner;
    int next_edge = 0;

    explicit Builder(int n) : next_inner(n) {
        t.n = n;
        t.ccw.resize(n);
    }

    int vertex_for(const GenNode& node) {
        if (node.white_label >= 0) return node.white_label - 1;
        t.ccw.emplace_back();
        ++t.inner_count;
        return next_inner++;
    }

    void attach(int parent_v, const GenNode& child) {
        int child_v = vertex_for(child);
        int out = 2 * next_edge, in = 2 * next_edge + 1;
        ++next_edge;
        t.origin.resize(2 * next_edge, -1);
        t.origin[out] = parent_v;
        t.origin[in] = child_v;
        t.ccw[parent_v].push_back(out);
        t.ccw[child_v].push_back(in);  // entrance edge first in ccw order
        for (const GenNode& g : child.children) attach(child_v, g);
    }
};

PlaneTree build_tree(const GenNode& root, int n) {
    Builder b(n);
    int rv = b.vertex_for(root);  // boundary vertex 1
    for (const GenNode& g : root.children) b.attach(rv, g);
    return std::move(b.t);
}

void planted_code_rec(const PlaneTree& t, int v, int entrance_slot, bool with_labels,
                      std::string& out) {
    out += '(';
    if (t.is_boundary(v)) {
        out += 'w';
        if (with_labels) out += std::to_string(t.label(v));
    } else {
        out += 'r';
    }
    int d = t.degree(v);
    for (int j = 1; j < d; ++j) {
        int e = t.ccw[v][(entrance_slot + j) % d];
        planted_code_rec(t, t.head(e), t.slot(PlaneTree::reverse(e)), with_labels, out);
    }
    out += ')';
}

std::string rooted_code(const PlaneTree& t, int root, int first_slot, bool with_labels) {
    std::string out = "(";
    if (t.is_boundary(root)) {
        out += 'w';
        if (with_labels) out += std::to_string(t.label(root));
    } else {
        out += 'r';
    }
    int d = t.degree(root);
    for (int j = 0; j < d; ++j) {
        int e = t.ccw[root][(first_slot + j) % d];
        planted_code_rec(t, t.head(e), t.slot(PlaneTree::reverse(e)), with_labels, out);
    }
    out += ')';
    return out;
}

int min_root_rotation(const PlaneTree& t) {
    int d = t.degree(0);
    int best = 0;
    std::string best_code = rooted_code(t, 0, 0, true);
    for (int r = 1; r < d; ++r) {
        std::string c = rooted_code(t, 0, r, true);
        if (c < best_code) {
            best_code = std::move(c);
            best = r;
        }
    }
    return best;
}

}  // namespace

std::string canonical_code(const PlaneTree& t) {
    int d = t.degree(0);
    std::string best = rooted_code(t, 0, 0, true);
    for (int r = 1; r < d; ++r) best = std::min(best, rooted_code(t, 0, r, true));
    return best;
}

std::string shape_code(const PlaneTree& t) {
    std::string best;
    for (int v = 0; v < t.vertex_count(); ++v)
        for (int s = 0; s < t.degree(v); ++s) {
            std::string c = rooted_code(t, v, s, false);
            if (best.empty() || c < best) best = std::move(c);
        }
    return best;
}

std::vector<PlaneTree> enumerate_trees(int n, const CuspMask& mask, TreeClass cls) {
    if (n < 2) throw std::invalid_argument("enumerate_trees: need n >= 2");
    if (mask.n() != n) throw std::invalid_argument("enumerate_trees: mask size mismatch");

    Generator gen(n, mask, cls);
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 2);

    std::map<std::string, PlaneTree> found;
    auto consider = [&](const GenNode& root) {
        PlaneTree t = build_tree(root, n);
        // store in the rotation that realizes the canonical code
        std::rotate(t.ccw[0].begin(), t.ccw[0].begin() + min_root_rotation(t), t.ccw[0].end());
        std::string code = rooted_code(t, 0, 0, true);
        found.emplace(std::move(code), std::move(t));
    };

    if (mask.is_cusp(1)) {
        for (const GenNode& sub : gen.planted(rest))
            consider(GenNode{1, {sub}});
    } else {
        if (rest.empty()) throw std::logic_error("enumerate_trees: n >= 2 guaranteed");
        for (int m = 1; m <= static_cast<int>(rest.size()); ++m) {
            std::vector<std::vector<std::vector<int>>> partitions;
            Generator::surjections(rest, m, partitions);
            for (const auto& parts : partitions) {
                std::vector<const NodeList*> options;
                for (const auto& p : parts) options.push_back(&gen.planted(p));
                std::vector<std::size_t> pick(parts.size(), 0);
                bool done = std::any_of(options.begin(), options.end(),
                                        [](const NodeList* l) { return l->empty(); });
                while (!done) {
                    GenNode root{1, {}};
                    for (std::size_t i = 0; i < parts.size(); ++i)
                        root.children.push_back((*options[i])[pick[i]]);
                    consider(root);
                    done = true;
                    for (std::size_t i = 0; i < parts.size(); ++i) {
                        if (++pick[i] < options[i]->size()) {
                            done = false;
                            break;
                        }
                        pick[i] = 0;
                    }
                }
            }
        }
    }

    std::vector<PlaneTree> out;
    out.reserve(found.size());
    for (auto& [code, tree] : found) out.push_back(std::move(tree));
    return out;
}

// ---------------------------------------------------------------------------
// Contraction
// ---------------------------------------------------------------------------

ContractionResult contract_edges(const PlaneTree& t, const std::vector<int>& edge_idxs) {
    for (int idx : edge_idxs) {
        if (idx < 0 || idx >= t.edge_count())
            throw std::invalid_argument("contract_edges: edge index out of range");
        if (!t.is_inner_inner(idx))
            throw std::invalid_argument("contract_edges: edge touches a boundary vertex");
    }

    std::vector<std::vector<int>> ccw = t.ccw;
    std::vector<int> origin = t.origin;
    std::vector<bool> vertex_dead(t.vertex_count(), false);
    std::vector<bool> edge_dead(t.edge_count(), false);
    std::vector<int> merged(t.vertex_count(), 1);

    for (int idx : edge_idxs) {
        int e0 = 2 * idx, e1 = 2 * idx + 1;
        int u = origin[e0], v = origin[e1];
        if (u == v) throw std::invalid_argument("contract_edges: repeated edge in set");
        // rotate both lists so the contracted darts come first, then splice
        auto& lu = ccw[u];
        auto& lv = ccw[v];
        std::rotate(lu.begin(), std::find(lu.begin(), lu.end(), e0), lu.end());
        std::rotate(lv.begin(), std::find(lv.begin(), lv.end(), e1), lv.end());
        std::vector<int> spliced(lu.begin() + 1, lu.end());
        spliced.insert(spliced.end(), lv.begin() + 1, lv.end());
        lu = std::move(spliced);
        lv.clear();
        for (int e : lu) origin[e] = u;
        vertex_dead[v] = true;
        edge_dead[idx] = true;
        merged[u] += merged[v];
    }

    // compact edges, then vertices
    std::vector<int> edge_map(t.edge_count(), -1);
    std::vector<int> original_edge;
    int ne = 0;
    for (int idx = 0; idx < t.edge_count(); ++idx)
        if (!edge_dead[idx]) {
            edge_map[idx] = ne++;
            original_edge.push_back(idx);
        }
    std::vector<int> vertex_map(t.vertex_count(), -1);
    int nv = 0;
    for (int v = 0; v < t.vertex_count(); ++v)
        if (!vertex_dead[v]) vertex_map[v] = nv++;

    ContractionResult res;
    res.tree.n = t.n;
    res.tree.inner_count = nv - t.n;
    res.tree.ccw.resize(nv);
    res.tree.origin.assign(2 * ne, -1);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (vertex_dead[v]) continue;
        auto& lst = res.tree.ccw[vertex_map[v]];
        for (int e : ccw[v]) {
            int newe = 2 * edge_map[e / 2] + (e & 1);
            lst.push_back(newe);
            res.tree.origin[newe] = vertex_map[v];
        }
    }
    for (int v = t.n; v < t.vertex_count(); ++v)
        if (!vertex_dead[v]) res.merged_inner_count.push_back(merged[v]);
    res.original_edge = std::move(original_edge);
    return res;
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

BoundaryPath boundary_path(const PlaneTree& t, int label_i, int label_j) {
    if (label_i == label_j) throw std::invalid_argument("boundary_path: labels coincide");
    if (label_i < 1 || label_i > t.n || label_j < 1 || label_j > t.n)
        throw std::invalid_argument("boundary_path: label out of range");
    int src = label_i - 1, dst = label_j - 1;

    std::vector<int> parent_edge(t.vertex_count(), -1);
    std::vector<int> stack{src};
    std::vector<bool> seen(t.vertex_count(), false);
    seen[src] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == dst) break;
        for (int e : t.ccw[v]) {
            int w = t.head(e);
            if (!seen[w]) {
                seen[w] = true;
                parent_edge[w] = e;
                stack.push_back(w);
            }
        }
    }
    BoundaryPath path;
    int v = dst;
    std::vector<int> rev_edges;
    while (v != src) {
        int e = parent_edge[v];
        rev_edges.push_back(e);
        v = t.origin[e];
    }
    path.vertices.push_back(src);
    for (auto it = rev_edges.rbegin(); it != rev_edges.rend(); ++it) {
        path.edges.push_back(*it);
        path.vertices.push_back(t.head(*it));
    }
    for (std::size_t k = 1; k + 1 < path.vertices.size(); ++k) {
        path.entrance_slot.push_back(t.slot(PlaneTree::reverse(path.edges[k - 1])));
        path.exit_slot.push_back(t.slot(path.edges[k]));
    }
    return path;
}

}  // namespace wpspine

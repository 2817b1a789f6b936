#include "wpspine/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wpspine/quadrature.hpp"

namespace wpspine {

namespace {

constexpr double kSumTol = 1e-9;
constexpr double kDegenerateW = 1e-12;

bool is_cusp_length(double L) { return L == 0.0; }

void check_shapes(const PlaneTree& t, const Decoration& d, const std::vector<double>& lengths) {
    if (static_cast<int>(lengths.size()) != t.n)
        throw std::invalid_argument("decoration: length count mismatch");
    if (static_cast<int>(d.inner_angles.size()) != t.inner_count ||
        static_cast<int>(d.w.size()) != t.n || static_cast<int>(d.v.size()) != t.n)
        throw std::invalid_argument("decoration: shape mismatch");
    for (int iv = 0; iv < t.inner_count; ++iv)
        if (static_cast<int>(d.inner_angles[iv].size()) != t.degree(t.n + iv))
            throw std::invalid_argument("decoration: angle count mismatch");
    for (int b = 0; b < t.n; ++b) {
        int deg = t.degree(b);
        if (is_cusp_length(lengths[b])) {
            if (static_cast<int>(d.w[b].size()) != deg || !d.v[b].empty())
                throw std::invalid_argument("decoration: cusp shape mismatch");
        } else {
            if (static_cast<int>(d.w[b].size()) != deg ||
                static_cast<int>(d.v[b].size()) != deg)
                throw std::invalid_argument("decoration: boundary shape mismatch");
        }
    }
}

}  // namespace

ValidationReport validate_decoration(const PlaneTree& t, const Decoration& d,
                                     const std::vector<double>& lengths,
                                     const std::optional<std::vector<int>>& anti_edges) {
    check_shapes(t, d, lengths);
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.ok = false;
        if (rep.first_violation.empty()) rep.first_violation = msg;
    };

    for (int iv = 0; iv < t.inner_count && rep.ok; ++iv) {
        double sum = 0;
        for (double a : d.inner_angles[iv]) {
            if (!(a > 0)) fail("nonpositive angle at inner vertex " + std::to_string(iv));
            sum += a;
        }
        if (std::abs(sum - M_PI) > kSumTol)
            fail("angle sum != pi at inner vertex " + std::to_string(iv));
    }

    if (anti_edges) {
        for (int idx : *anti_edges) {
            double s = d.phi(t, 2 * idx) + d.phi(t, 2 * idx + 1);
            if (!(s > M_PI))
                fail("reversed angle inequality violated on edge " + std::to_string(idx));
        }
    } else {
        for (int idx = 0; idx < t.edge_count(); ++idx) {
            double s = d.phi(t, 2 * idx) + d.phi(t, 2 * idx + 1);
            if (!(s < M_PI)) fail("angle inequality violated on edge " + std::to_string(idx));
        }
    }

    for (int b = 0; b < t.n && rep.ok; ++b) {
        if (is_cusp_length(lengths[b])) {
            double sw = 0;
            for (double x : d.w[b]) {
                if (!(x > 0)) fail("nonpositive horocycle segment at cusp " + std::to_string(b + 1));
                sw += x;
            }
            if (std::abs(sw - 1.0) > kSumTol)
                fail("cusp segments do not sum to 1 at label " + std::to_string(b + 1));
        } else {
            double sw = 0, sv = 0;
            for (double x : d.w[b]) {
                if (!(x > 0)) fail("nonpositive w entry at label " + std::to_string(b + 1));
                sw += x;
            }
            for (double x : d.v[b]) {
                if (!(x > 0)) fail("nonpositive v entry at label " + std::to_string(b + 1));
                sv += x;
            }
            if (std::abs(sw - lengths[b] / 2) > kSumTol)
                fail("w sum != L/2 at label " + std::to_string(b + 1));
            if (std::abs(sv - lengths[b] / 2) > kSumTol)
                fail("v sum != L/2 at label " + std::to_string(b + 1));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Shears
// ---------------------------------------------------------------------------

namespace {

double half_shear_of(const PlaneTree& t, const Decoration& d, const std::vector<double>& lengths,
                     int e) {
    int o = t.origin[e];
    if (t.is_boundary(o)) {
        if (is_cusp_length(lengths[o])) return 0.0;  // symmetric cusp quadrilaterals
        double w = d.w[o][t.slot(e)];
        if (w < kDegenerateW)
            throw std::invalid_argument("compute_shears: degenerate boundary segment");
        return w;
    }
    const auto& ang = d.inner_angles[o - t.n];
    int j = t.slot(e);
    int deg = t.degree(o);
    return std::log(std::sin(ang[(j + 1) % deg])) - std::log(std::sin(ang[(j + 2) % deg]));
}

}  // namespace

ShearAssignment compute_shears(const PlaneTree& t, const Decoration& d,
                               const std::vector<double>& lengths) {
    check_shapes(t, d, lengths);
    ShearAssignment s;
    s.half_shear.resize(2 * t.edge_count());
    s.edge_shear.resize(t.edge_count());
    for (int e = 0; e < 2 * t.edge_count(); ++e) s.half_shear[e] = half_shear_of(t, d, lengths, e);
    for (int idx = 0; idx < t.edge_count(); ++idx)
        s.edge_shear[idx] = s.half_shear[2 * idx] + s.half_shear[2 * idx + 1];

    s.corner.resize(t.n);
    for (int b = 0; b < t.n; ++b) {
        int deg = t.degree(b);
        s.corner[b].resize(deg);
        if (is_cusp_length(lengths[b])) {
            for (int j = 0; j < deg; ++j)
                s.corner[b][j] = std::log(d.w[b][j] / d.w[b][(j + 1) % deg]);
            continue;
        }
        for (int j = 0; j < deg; ++j) {
            double wj = d.w[b][j], wn = d.w[b][(j + 1) % deg];
            if (wj < kDegenerateW || wn < kDegenerateW)
                throw std::invalid_argument("compute_shears: degenerate boundary segment");
            // z_c = -v_j + log((1 - e^{-w_j}) / (e^{w_{j+1}} - 1))
            s.corner[b][j] = -d.v[b][j] + std::log(-std::expm1(-wj)) - std::log(std::expm1(wn));
        }
    }
    return s;
}

double origin_shear_sum(const PlaneTree& t, const ShearAssignment& s) {
    double acc = 0;
    for (double z : s.edge_shear) acc += kEdgeArcSign * 2.0 * z;
    for (const auto& cs : s.corner)
        for (double z : cs) acc += kCornerArcSign * z;
    return acc;
}

// ---------------------------------------------------------------------------
// Poisson brackets
// ---------------------------------------------------------------------------

namespace {

// Chart coordinates on the polytope: (phi_1, phi_2) per inner vertex and
// (w_j, v_j), j < deg-1, per boundary vertex of positive length and degree
// >= 2. The closing entries are dependent through the simplex constraints.
struct Chart {
    const PlaneTree& t;
    std::vector<int> inner_base;
    std::vector<int> w_base, v_base;
    int count = 0;

    Chart(const PlaneTree& tree, const std::vector<double>& lengths) : t(tree) {
        inner_base.assign(t.inner_count, -1);
        w_base.assign(t.n, -1);
        v_base.assign(t.n, -1);
        for (int iv = 0; iv < t.inner_count; ++iv) {
            inner_base[iv] = count;
            count += 2;
        }
        for (int b = 0; b < t.n; ++b) {
            int deg = t.degree(b);
            if (lengths[b] == 0.0 || deg < 2) continue;
            w_base[b] = count;
            count += deg - 1;
            v_base[b] = count;
            count += deg - 1;
        }
    }

    void add_inner(std::vector<double>& g, int iv, int slot, double val) const {
        int base = inner_base[iv];
        if (slot == 0) g[base] += val;
        else if (slot == 1) g[base + 1] += val;
        else {
            g[base] -= val;
            g[base + 1] -= val;
        }
    }
    void add_w(std::vector<double>& g, int b, int slot, double val) const {
        if (w_base[b] < 0) return;  // no free coordinates at this vertex
        int deg = t.degree(b);
        if (slot < deg - 1) g[w_base[b] + slot] += val;
        else
            for (int j = 0; j < deg - 1; ++j) g[w_base[b] + j] -= val;
    }
    void add_v(std::vector<double>& g, int b, int slot, double val) const {
        if (v_base[b] < 0) return;
        int deg = t.degree(b);
        if (slot < deg - 1) g[v_base[b] + slot] += val;
        else
            for (int j = 0; j < deg - 1; ++j) g[v_base[b] + j] -= val;
    }
};

std::vector<double> edge_gradient(const Chart& ch, const PlaneTree& t, const Decoration& d,
                                  const std::vector<double>& lengths, int idx) {
    std::vector<double> g(ch.count, 0.0);
    for (int e : {2 * idx, 2 * idx + 1}) {
        int o = t.origin[e];
        if (t.is_boundary(o)) {
            if (lengths[o] != 0.0) ch.add_w(g, o, t.slot(e), 1.0);
            continue;
        }
        int iv = o - t.n, j = t.slot(e), deg = t.degree(o);
        const auto& ang = d.inner_angles[iv];
        ch.add_inner(g, iv, (j + 1) % deg, 1.0 / std::tan(ang[(j + 1) % deg]));
        ch.add_inner(g, iv, (j + 2) % deg, -1.0 / std::tan(ang[(j + 2) % deg]));
    }
    return g;
}

std::vector<double> corner_gradient(const Chart& ch, const PlaneTree& t, const Decoration& d,
                                    int b, int j) {
    std::vector<double> g(ch.count, 0.0);
    int deg = t.degree(b);
    int jn = (j + 1) % deg;
    ch.add_v(g, b, j, -1.0);
    ch.add_w(g, b, j, 1.0 / std::expm1(d.w[b][j]));
    ch.add_w(g, b, jn, -1.0 - 1.0 / std::expm1(d.w[b][jn]));
    return g;
}

double chart_bracket(const Chart& ch, const std::vector<double>& F, const std::vector<double>& G) {
    const PlaneTree& t = ch.t;
    double acc = 0;
    for (int iv = 0; iv < t.inner_count; ++iv) {
        int p = ch.inner_base[iv];
        acc += 0.5 * (F[p] * G[p + 1] - F[p + 1] * G[p]);
    }
    for (int b = 0; b < t.n; ++b) {
        if (ch.w_base[b] < 0) continue;
        int deg = t.degree(b);
        int wb = ch.w_base[b], vb = ch.v_base[b];
        for (int j = 0; j <= deg - 2; ++j)
            acc += 0.5 * (F[wb + j] * G[vb + j] - F[vb + j] * G[wb + j]);
        for (int j = 0; j <= deg - 3; ++j)
            acc += 0.5 * (F[vb + j] * G[wb + j + 1] - F[wb + j + 1] * G[vb + j]);
    }
    return acc;
}

// Decoration reconstructed from chart coordinates; dependent entries close
// the simplex constraints.
Decoration decoration_from_chart(const Chart& ch, const PlaneTree& t,
                                 const std::vector<double>& lengths,
                                 const std::vector<double>& x) {
    Decoration d;
    d.inner_angles.resize(t.inner_count);
    d.w.resize(t.n);
    d.v.resize(t.n);
    for (int iv = 0; iv < t.inner_count; ++iv) {
        double a0 = x[ch.inner_base[iv]], a1 = x[ch.inner_base[iv] + 1];
        d.inner_angles[iv] = {a0, a1, M_PI - a0 - a1};
    }
    for (int b = 0; b < t.n; ++b) {
        int deg = t.degree(b);
        if (lengths[b] == 0.0) {
            d.w[b].assign(deg, 1.0 / deg);
            continue;
        }
        d.w[b].resize(deg);
        d.v[b].resize(deg);
        if (deg == 1) {
            d.w[b][0] = lengths[b] / 2;
            d.v[b][0] = lengths[b] / 2;
            continue;
        }
        double sw = 0, sv = 0;
        for (int j = 0; j < deg - 1; ++j) {
            d.w[b][j] = x[ch.w_base[b] + j];
            d.v[b][j] = x[ch.v_base[b] + j];
            sw += d.w[b][j];
            sv += d.v[b][j];
        }
        d.w[b][deg - 1] = lengths[b] / 2 - sw;
        d.v[b][deg - 1] = lengths[b] / 2 - sv;
    }
    return d;
}

std::vector<double> chart_point(const Chart& ch, const PlaneTree& t, const Decoration& d,
                                const std::vector<double>& lengths) {
    std::vector<double> x(ch.count, 0.0);
    for (int iv = 0; iv < t.inner_count; ++iv) {
        x[ch.inner_base[iv]] = d.inner_angles[iv][0];
        x[ch.inner_base[iv] + 1] = d.inner_angles[iv][1];
    }
    for (int b = 0; b < t.n; ++b) {
        if (ch.w_base[b] < 0) continue;
        int deg = t.degree(b);
        for (int j = 0; j < deg - 1; ++j) {
            x[ch.w_base[b] + j] = d.w[b][j];
            x[ch.v_base[b] + j] = d.v[b][j];
        }
    }
    return x;
}

double shear_value(const PlaneTree& t, const Decoration& d, const std::vector<double>& lengths,
                   bool is_corner, int index, int sub) {
    if (!is_corner) {
        double z = 0;
        for (int e : {2 * index, 2 * index + 1}) {
            int o = t.origin[e];
            if (t.is_boundary(o)) {
                if (lengths[o] != 0.0) z += d.w[o][t.slot(e)];
            } else {
                const auto& ang = d.inner_angles[o - t.n];
                int j = t.slot(e), deg = t.degree(o);
                z += std::log(std::sin(ang[(j + 1) % deg])) -
                     std::log(std::sin(ang[(j + 2) % deg]));
            }
        }
        return z;
    }
    int deg = t.degree(index);
    int jn = (sub + 1) % deg;
    return -d.v[index][sub] + std::log(-std::expm1(-d.w[index][sub])) -
           std::log(std::expm1(d.w[index][jn]));
}

std::vector<double> fd_gradient(const Chart& ch, const PlaneTree& t,
                                const std::vector<double>& lengths,
                                const std::vector<double>& x0, bool is_corner, int index,
                                int sub) {
    const double h = 1e-6;
    std::vector<double> g(ch.count, 0.0);
    std::vector<double> x = x0;
    for (int c = 0; c < ch.count; ++c) {
        x[c] = x0[c] + h;
        double fp = shear_value(t, decoration_from_chart(ch, t, lengths, x), lengths, is_corner,
                                index, sub);
        x[c] = x0[c] - h;
        double fm = shear_value(t, decoration_from_chart(ch, t, lengths, x), lengths, is_corner,
                                index, sub);
        x[c] = x0[c];
        g[c] = (fp - fm) / (2 * h);
    }
    return g;
}

struct FnId {
    bool is_corner;
    int index;  // edge index or boundary vertex
    int sub;    // corner slot
};

double bracket_target(const PlaneTree& t, const std::vector<double>& lengths, const FnId& a,
                      const FnId& b) {
    if (!a.is_corner && !b.is_corner) {
        // shared inner vertex with consecutive ccw slots
        for (int ea : {2 * a.index, 2 * a.index + 1}) {
            int o = t.origin[ea];
            if (!t.is_inner(o)) continue;
            for (int eb : {2 * b.index, 2 * b.index + 1}) {
                if (t.origin[eb] != o) continue;
                int ja = t.slot(ea), jb = t.slot(eb), deg = t.degree(o);
                if (jb == (ja + 1) % deg) return 0.5;
                if (ja == (jb + 1) % deg) return -0.5;
            }
        }
        return 0.0;
    }
    if (a.is_corner && b.is_corner) {
        if (a.index != b.index) return 0.0;
        int deg = t.degree(a.index);
        if (deg <= 2) return 0.0;
        if (b.sub == (a.sub + 1) % deg) return 0.5;
        if (a.sub == (b.sub + 1) % deg) return -0.5;
        return 0.0;
    }
    // mixed: orient so a = edge, b = corner, flipping the sign
    if (a.is_corner) return -bracket_target(t, lengths, b, a);
    int bvert = b.index, deg = t.degree(bvert);
    if (deg < 2 || lengths[bvert] == 0.0) return 0.0;
    for (int e : {2 * a.index, 2 * a.index + 1}) {
        if (t.origin[e] != bvert) continue;
        int je = t.slot(e);
        if (je == b.sub) return -0.5;
        if (je == (b.sub + 1) % deg) return 0.5;
    }
    return 0.0;
}

}  // namespace

std::vector<BracketEntry> poisson_brackets(const PlaneTree& t, const Decoration& d,
                                           const std::vector<double>& lengths,
                                           bool finite_difference) {
    check_shapes(t, d, lengths);
    Chart ch(t, lengths);

    std::vector<FnId> fns;
    for (int idx = 0; idx < t.edge_count(); ++idx) fns.push_back({false, idx, 0});
    for (int b = 0; b < t.n; ++b) {
        if (lengths[b] == 0.0) continue;
        for (int j = 0; j < t.degree(b); ++j) fns.push_back({true, b, j});
    }

    std::vector<std::vector<double>> grads;
    grads.reserve(fns.size());
    std::vector<double> x0 = chart_point(ch, t, d, lengths);
    for (const FnId& f : fns) {
        if (finite_difference)
            grads.push_back(fd_gradient(ch, t, lengths, x0, f.is_corner, f.index, f.sub));
        else if (f.is_corner)
            grads.push_back(corner_gradient(ch, t, d, f.index, f.sub));
        else
            grads.push_back(edge_gradient(ch, t, d, lengths, f.index));
    }

    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < fns.size(); ++i)
        for (std::size_t j = i + 1; j < fns.size(); ++j) {
            BracketEntry e;
            e.first_is_corner = fns[i].is_corner;
            e.first_index = fns[i].index;
            e.first_sub = fns[i].sub;
            e.second_is_corner = fns[j].is_corner;
            e.second_index = fns[j].index;
            e.second_sub = fns[j].sub;
            e.value = chart_bracket(ch, grads[i], grads[j]);
            e.target = bracket_target(t, lengths, fns[i], fns[j]);
            out.push_back(e);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Distance difference
// ---------------------------------------------------------------------------

double distance_difference(const PlaneTree& t, const Decoration& d,
                           const std::vector<double>& lengths, int label_i, int label_j) {
    check_shapes(t, d, lengths);
    if (lengths.at(label_i - 1) != 0.0 || lengths.at(label_j - 1) != 0.0)
        throw std::invalid_argument("distance_difference: labels must be cusps");

    BoundaryPath path = boundary_path(t, label_i, label_j);
    double D = 0;
    for (std::size_t k = 1; k + 1 < path.vertices.size(); ++k) {
        int v = path.vertices[k];
        int in_slot = path.entrance_slot[k - 1];
        int out_slot = path.exit_slot[k - 1];
        if (t.is_inner(v)) {
            const auto& ang = d.inner_angles[v - t.n];
            D += std::log(std::sin(ang[in_slot])) - std::log(std::sin(ang[out_slot]));
        } else {
            int deg = t.degree(v);
            int steps = ((out_slot - in_slot) % deg + deg) % deg;
            // d_{j+1} - d_j = v_j - log(e^{w_j} - 1) + log(1 - e^{-w_{j+1}})
            double acc = 0;
            for (int s = 0; s < steps; ++s) {
                int j = (in_slot + s) % deg;
                int jn = (j + 1) % deg;
                acc += d.v[v][j] - std::log(std::expm1(d.w[v][j])) +
                       std::log(-std::expm1(-d.w[v][jn]));
            }
            D -= acc;
        }
    }
    return D;
}

// ---------------------------------------------------------------------------
// Boundary passage integrals
// ---------------------------------------------------------------------------

Rat passage_I_coeff(int k, int l, int m) {
    if (k < 2 || l < 2 || l > k || m < 0)
        throw std::invalid_argument("passage_I_coeff: parameter range");
    return rat_pow2(1 - k) / rat_factorial(k + m - 1) * rat_binomial(l + m - 2, m);
}

double passage_I(int k, int l, double u, double L) {
    if (k < 2 || l < 2 || l > k) throw std::invalid_argument("passage_I: parameter range");
    double term = std::pow(2.0, 1 - k) * std::pow(L, k - 1);
    for (int i = 2; i <= k - 1; ++i) term /= i;  // 1/(k-1)!
    double acc = term;
    for (int m = 0; m < 400; ++m) {
        double ratio = u * L * (l + m - 1) / (static_cast<double>(m + 1) * (k + m));
        term *= ratio;
        acc += term;
        if (std::abs(term) < 1e-20 * std::abs(acc) && std::abs(ratio) < 0.5) break;
    }
    return acc;
}

double quad_E(int k, int l, double L, double u) {
    if (std::abs(u) >= 0.5) throw std::invalid_argument("quad_E: need |u| < 1/2");
    double reflection = u == 0.0 ? 1.0 : 2 * M_PI * u / std::sin(2 * M_PI * u);
    return std::pow(2.0, k - 1) * passage_I(k, l, u, L) * reflection * passage_I(k, l, -u, L);
}

double quad_E22_quadrature(double L, double u) {
    // E_{2,2} = 2 * int over (0,L/2)^2 of e^{2u(d_2 - d_1)} dv_1 dw_1
    double half = L / 2;
    auto outer = [&](double w1, double dl, double dh) {
        // w1 = dl and w2 = L/2 - w1 = dh, both exact at their endpoints
        double factor = std::pow(-std::expm1(-dh), 2 * u) * std::pow(std::expm1(dl), -2 * u);
        double inner = gl_integrate([&](double v1) { return std::exp(2 * u * v1); }, 0, half, 32);
        return factor * inner;
    };
    if (u == 0.0) return 2 * half * half;
    return 2 * integrate_sided_pow(outer, 0, half, -2 * u, 2 * u, 32);
}

}  // namespace wpspine

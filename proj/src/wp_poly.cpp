#include "wpspine/wp_poly.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wpspine {

void WPPolynomial::add_term(std::vector<int> key, const Rat& c) {
    if (static_cast<int>(key.size()) != n_ + 1)
        throw std::invalid_argument("WPPolynomial::add_term: key size mismatch");
    if (c == 0) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

WPPolynomial& WPPolynomial::operator+=(const WPPolynomial& o) {
    if (n_ != o.n_) throw std::invalid_argument("WPPolynomial: variable count mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

WPPolynomial& WPPolynomial::operator-=(const WPPolynomial& o) {
    if (n_ != o.n_) throw std::invalid_argument("WPPolynomial: variable count mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

bool WPPolynomial::is_homogeneous(int deg) const {
    for (const auto& [k, c] : terms_) {
        (void)c;
        if (std::accumulate(k.begin(), k.end(), 0) != deg) return false;
    }
    return true;
}

WPPolynomial WPPolynomial::restrict_to_cusps(const CuspMask& mask) const {
    if (mask.n() != n_) throw std::invalid_argument("restrict_to_cusps: mask size mismatch");
    WPPolynomial out(n_);
    for (const auto& [k, c] : terms_) {
        bool vanishes = false;
        for (int i = 0; i < n_; ++i)
            if (mask.flags[i] && k[i + 1] > 0) {
                vanishes = true;
                break;
            }
        if (!vanishes) out.add_term(k, c);
    }
    return out;
}

PiPoly WPPolynomial::evaluate_symbolic(const std::vector<Rat>& lengths) const {
    if (static_cast<int>(lengths.size()) != n_)
        throw std::invalid_argument("evaluate: length count mismatch");
    PiPoly acc;
    for (const auto& [k, c] : terms_) {
        Rat coeff = c;
        for (int i = 0; i < n_; ++i) coeff *= rat_pow(lengths[i] * lengths[i], k[i + 1]);
        acc += PiPoly::monomial(coeff, k[0]);
    }
    return acc;
}

double WPPolynomial::evaluate_numeric(const std::vector<double>& lengths) const {
    if (static_cast<int>(lengths.size()) != n_)
        throw std::invalid_argument("evaluate: length count mismatch");
    const double pi2 = M_PI * M_PI;
    double acc = 0;
    for (const auto& [k, c] : terms_) {
        double m = c.get_d() * std::pow(pi2, k[0]);
        for (int i = 0; i < n_; ++i) m *= std::pow(lengths[i] * lengths[i], k[i + 1]);
        acc += m;
    }
    return acc;
}

BigFloat WPPolynomial::evaluate_bigfloat(const std::vector<BigFloat>& lengths) const {
    if (static_cast<int>(lengths.size()) != n_)
        throw std::invalid_argument("evaluate: length count mismatch");
    BigFloat pi = bf_pi();
    BigFloat pi2 = pi * pi;
    BigFloat acc(0);
    for (const auto& [k, c] : terms_) {
        BigFloat m = BigFloat(c) * bf_pow_int(pi2, k[0]);
        for (int i = 0; i < n_; ++i) m *= bf_pow_int(lengths[i] * lengths[i], k[i + 1]);
        acc += m;
    }
    return acc;
}

std::string WPPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.get_str();
        if (k[0] > 0) out += " pi2^" + std::to_string(k[0]);
        for (int i = 0; i < n_; ++i)
            if (k[i + 1] > 0) out += " L" + std::to_string(i + 1) + "2^" + std::to_string(k[i + 1]);
    }
    return out;
}

WPPolynomial anti_tree_weight(const PlaneTree& t) {
    Rat coeff(1);
    std::vector<int> key(t.n + 1, 0);
    for (int v = 0; v < t.vertex_count(); ++v) {
        int d = t.degree(v);
        if (t.is_inner(v)) {
            if (d < 3) throw std::invalid_argument("anti_tree_weight: inner vertex of degree < 3");
            // 2^{d-2}/(d-1)! * gamma_{d-1},  gamma_k = (-1)^k pi^{2k-2}/(k-1)!
            Rat f = rat_pow2(d - 2) / rat_factorial(d - 1) / rat_factorial(d - 2);
            if ((d - 1) % 2 != 0) f = -f;
            coeff *= f;
            key[0] += d - 2;
        } else {
            // 2^{d-2}/(d-1)! * t_{d-1}(L),  t_k(L) = (2/k!) (L/2)^{2k}
            coeff *= rat_pow2(1 - d) / (rat_factorial(d - 1) * rat_factorial(d - 1));
            key[v + 1] += d - 1;
        }
    }
    WPPolynomial p(t.n);
    p.add_term(std::move(key), coeff);
    return p;
}

WPPolynomial anti_polytope_volume(const PlaneTree& t, const std::vector<int>& anti_edges) {
    ContractionResult contracted = contract_edges(t, anti_edges);
    const PlaneTree& ct = contracted.tree;
    Rat coeff = rat_pow2(t.n - 2);
    std::vector<int> key(t.n + 1, 0);
    for (int v = 0; v < ct.vertex_count(); ++v) {
        int d = ct.degree(v);
        if (ct.is_inner(v)) {
            coeff /= rat_factorial(2 * d - 4);
            key[0] += d - 2;
        } else {
            coeff *= rat_pow2(2 - 2 * d) / (rat_factorial(d - 1) * rat_factorial(d - 1));
            key[v + 1] += d - 1;
        }
    }
    WPPolynomial p(t.n);
    p.add_term(std::move(key), coeff);
    return p;
}

WPPolynomial delaunay_polytope_volume(const PlaneTree& t) {
    std::vector<int> inner = t.inner_inner_edges();
    WPPolynomial acc(t.n);
    const std::size_t m = inner.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
        std::vector<int> subset;
        for (std::size_t i = 0; i < m; ++i)
            if (bits & (std::size_t{1} << i)) subset.push_back(inner[i]);
        WPPolynomial piece = anti_polytope_volume(t, subset);
        if (subset.size() % 2 == 0)
            acc += piece;
        else
            acc -= piece;
    }
    return acc;
}

WPPolynomial wp_volume(int n, const CuspMask& mask, VolumeRoute route) {
    if (n < 2) throw std::invalid_argument("wp_volume: need n >= 2");
    WPPolynomial acc(n);
    if (route == VolumeRoute::anti) {
        for (const PlaneTree& t : enumerate_anti(n, mask)) acc += anti_tree_weight(t);
    } else {
        for (const PlaneTree& t : enumerate_delaunay(n, mask)) acc += delaunay_polytope_volume(t);
    }
    return acc;
}

}  // namespace wpspine

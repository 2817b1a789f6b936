#pragma once

#include <map>
#include <string>
#include <vector>

#include "wpspine/bigfloat.hpp"
#include "wpspine/pipoly.hpp"
#include "wpspine/rational.hpp"
#include "wpspine/trees.hpp"

namespace wpspine {

/// Exact rational polynomial in the graded variables pi^2 and L_1^2..L_n^2.
/// Keys are exponent vectors (a, b_1, .., b_n) for pi^{2a} * prod L_i^{2 b_i}.
class WPPolynomial {
public:
    WPPolynomial() = default;
    explicit WPPolynomial(int n) : n_(n) {}

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

    void add_term(std::vector<int> key, const Rat& c);

    WPPolynomial& operator+=(const WPPolynomial& o);
    WPPolynomial& operator-=(const WPPolynomial& o);
    friend WPPolynomial operator+(WPPolynomial a, const WPPolynomial& b) { return a += b; }
    friend WPPolynomial operator-(WPPolynomial a, const WPPolynomial& b) { return a -= b; }
    friend bool operator==(const WPPolynomial& a, const WPPolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// True iff every monomial has total graded degree a + sum b_i == deg.
    bool is_homogeneous(int deg) const;

    /// Sets L_i = 0 for each masked index, dropping monomials that vanish.
    WPPolynomial restrict_to_cusps(const CuspMask& mask) const;

    PiPoly evaluate_symbolic(const std::vector<Rat>& lengths) const;
    double evaluate_numeric(const std::vector<double>& lengths) const;
    BigFloat evaluate_bigfloat(const std::vector<BigFloat>& lengths) const;

    std::string to_string() const;

private:
    int n_ = 0;
    std::map<std::vector<int>, Rat> terms_;
};

/// Weight of a single anti-Delaunay tree: the product over inner vertices of
/// 2^{d-2}/(d-1)! * gamma_{d-1} and over boundary vertices of
/// 2^{d-2}/(d-1)! * t_{d-1}(L_b), as one exact monomial.
WPPolynomial anti_tree_weight(const PlaneTree& t);

/// Volume of the relaxed polytope in which the edges of A carry the reversed
/// angle inequality: factorizes over the vertices of the contracted tree.
WPPolynomial anti_polytope_volume(const PlaneTree& t, const std::vector<int>& anti_edges);

/// Exact volume of the constrained polytope of one tree, by inclusion-
/// exclusion over subsets of inner-inner edges.
WPPolynomial delaunay_polytope_volume(const PlaneTree& t);

enum class VolumeRoute { anti, inclusion_exclusion };

/// Total Weil-Petersson volume V_{0,1+n}(0, L) with the masked lengths set to
/// zero. Both routes produce identical exact polynomials.
WPPolynomial wp_volume(int n, const CuspMask& mask, VolumeRoute route);

}  // namespace wpspine

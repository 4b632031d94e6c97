#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kstab/polytope.hpp"

namespace kstab {

/// Toric boundary divisor: facet normal of P (primitive, inner) and coefficient.
struct BoundaryDivisor {
    Vec normal;
    Rat coeff;
};

/// (X, B) for X the toric variety of P and B = sum b_rho D_rho torus invariant.
/// Rays are the facet normals of P in P.facets() order.
class ToricPair {
public:
    ToricPair() = default;
    /// Every listed normal must be a facet normal of P; unlisted rays get b = 0.
    ToricPair(LatticePolytope P, const std::vector<BoundaryDivisor>& boundary);

    const LatticePolytope& polytope() const { return P_; }
    std::size_t num_rays() const { return coeffs_.size(); }
    const Vec& ray(std::size_t i) const { return P_.facets()[i].normal; }
    const Rat& coeff(std::size_t i) const { return coeffs_[i]; }
    const std::vector<Rat>& coeffs() const { return coeffs_; }
    std::vector<BoundaryDivisor> boundary() const;

    bool simplicial() const;
    /// Every maximal cone spanned by a lattice basis.
    bool smooth() const;
    /// Translation t with P + t the polytope of -K_(X,B), if L = -K_(X,B).
    std::optional<Vec> anticanonical_shift() const;
    /// Some lambda with K_(X,B) = lambda L numerically, if one exists.
    std::optional<Rat> canonical_proportionality() const;

private:
    LatticePolytope P_;
    std::vector<Rat> coeffs_;
};

/// A_(X,B) of the monomial valuation with weight w: sum t_rho (1 - b_rho) over the
/// containing simplicial cone, w = sum t_rho u_rho.
Rat toric_log_discrepancy(const ToricPair& pair, const Vec& w);

enum class PairClass { klt, lc_not_klt, not_lc };
PairClass classify_pair(const ToricPair& pair);
std::string to_string(PairClass c);

}  // namespace kstab

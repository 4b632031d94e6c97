#pragma once

#include <cstdint>
#include <vector>

#include "kstab/filtration.hpp"
#include "kstab/measure.hpp"
#include "kstab/pair.hpp"
#include "kstab/plfunction.hpp"

namespace kstab {

/// One central-fiber component, i.e. one linearity cell of f.
struct ComponentData {
    AffinePiece piece;
    LatticePolytope cell;       ///< empty for the adjoined trivial component
    Vec w;                      ///< b * a, integral
    std::int64_t b = 1;         ///< lcm of the slope denominators
    MonomialValuation valuation;///< weight a
    Rat mass;                   ///< vol(cell) / vol(P)
    Rat A;                      ///< log discrepancy of the valuation
    Rat phi_value;              ///< c + min_P <a, .>
    bool trivial() const { return valuation.is_trivial(); }
};

/// Positive non-Archimedean metric on the polarized toric variety of P, given by
/// a concave PL function f (canonical form).
class ToricMetric {
public:
    ToricMetric() = default;
    ToricMetric(LatticePolytope P, const PLFunction& f);

    static ToricMetric trivial(const LatticePolytope& P, const Rat& c = Rat(0));
    static ToricMetric from_one_ps(const LatticePolytope& P, const Vec& a, const Rat& c);
    /// f = min(0, l - eps), l the lattice distance from the vertex v0.
    static ToricMetric deformation_to_normal_cone(const LatticePolytope& P, const Vec& v0, const Rat& eps);

    const LatticePolytope& polytope() const { return P_; }
    const PLFunction& f() const { return f_; }
    int dim() const { return P_.dim(); }
    std::int64_t N0() const { return N0_; }
    const Rat& lambda_max() const { return lambda_max_; }
    const Rat& lambda_min() const { return lambda_min_; }

    ToricMetric translate(const Rat& c) const;
    ToricMetric scale_base_change(std::int64_t d) const;

    /// Weight floor(min_i(<a_i, u> + c_i m)) of the section u in mP.
    std::int64_t weight(const LatticePoint& u, std::int64_t m) const;
    GradedWeights filtration_of(std::int64_t m) const;
    /// Sections u of mP with weight >= lambda, i.e. the monomials of the flag ideal piece.
    std::vector<LatticePoint> flag_ideal_piece(std::int64_t m, std::int64_t lambda) const;

    /// One entry per linearity cell; with include_trivial the trivial valuation
    /// (mass 0, phi_value = lambda_max) is adjoined when no cell carries it.
    std::vector<ComponentData> components(const ToricPair& pair, bool include_trivial = false) const;

    PPMeasure dh_exact() const;
    bool is_almost_trivial() const;

    friend bool operator==(const ToricMetric& a, const ToricMetric& b) {
        return a.P_ == b.P_ && a.f_ == b.f_;
    }

private:
    LatticePolytope P_;
    PLFunction f_;
    std::int64_t N0_ = 1;
    Rat lambda_max_;
    Rat lambda_min_;
    // Integer form of the pieces over the common denominator q.
    std::int64_t q_ = 1;
    std::vector<std::vector<std::int64_t>> A_;
    std::vector<std::int64_t> C_;
};

}  // namespace kstab

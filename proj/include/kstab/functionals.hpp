#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kstab/measure.hpp"
#include "kstab/pair.hpp"
#include "kstab/testconfig.hpp"

namespace kstab {

/// One slot of an intersection number: a positive metric on the line bundle of
/// the polytope P, given by a concave PL function on P (zero for trivial metrics).
struct MetricSlot {
    LatticePolytope P;
    PLFunction f;

    static MetricSlot of(const ToricMetric& phi) { return {phi.polytope(), phi.f()}; }
    static MetricSlot trivial(const LatticePolytope& P) { return {P, PLFunction::constant(P.dim(), Rat(0))}; }
};

/// (phi_0 . ... . phi_n) for n+1 metrics on nef toric line bundles in dimension n.
Rat intersection_number(const std::vector<MetricSlot>& slots);

/// Polytope {<u_rho, x> >= -d_rho} of the divisor sum d_rho D_rho on the fan of P,
/// or nullopt if the class is not nef.
std::optional<LatticePolytope> nef_polytope(const LatticePolytope& P, const std::vector<Rat>& d);

/// (psi_triv^D . others) for an arbitrary divisor class D = sum d_rho D_rho on the fan of
/// P, via D = (D + N L) - N L with D + N L nef.
Rat intersection_with_class(const LatticePolytope& P, const std::vector<Rat>& d,
                            const std::vector<MetricSlot>& others);

/// Divisor coefficients of K_(X,B) = -sum (1 - b_rho) D_rho.
std::vector<Rat> log_canonical_class(const ToricPair& pair);

/// V = (L^n) = n! vol(P).
Rat degree(const LatticePolytope& P);

struct EnergyRoutes {
    Rat barycenter;
    Rat integral;
    Rat intersection;
};
EnergyRoutes energy_routes(const ToricMetric& phi);
/// E^NA; throws InvariantViolation when the three routes disagree.
Rat energy(const ToricMetric& phi);

struct IJNorms {
    Rat I;
    Rat J;
    Rat l1;
    Rat l2_squared;
    Rat linf;
};
IJNorms i_j_norms(const ToricMetric& phi);

struct DFFit {
    UniPoly w;   ///< w_m along m in N0 Z
    UniPoly N;   ///< N_m along m in N0 Z
    std::int64_t stable_from = 0;
    Rat F0;
    Rat F1;
    Rat DF;
};
DFFit df_weight_fit(const ToricMetric& phi);

/// Integral of f over the facet of P with index `facet`, lattice-normalized.
Rat facet_integral(const ToricMetric& phi, std::size_t facet);

struct FacetFit {
    UniPoly w;    ///< weight sum over the lattice points of mF
    UniPoly N;    ///< number of lattice points of mF
    Rat integral; ///< leading coefficient of w: the integral of f over F
    Rat volume;   ///< leading coefficient of N: the lattice volume of F
};
/// Weight fits restricted to one facet, along m in N0 Z.
FacetFit facet_weight_fit(const ToricMetric& phi, std::size_t facet);

/// DF_B - DF = sum_rho b_rho (int_F f - latvol(F) E) / vol(P), from facet weight
/// fits; throws if they disagree with exact facet integration.
Rat boundary_df_term(const ToricMetric& phi, const ToricPair& pair);
/// Log Donaldson-Futaki invariant DF_B.
Rat log_df(const ToricMetric& phi, const ToricPair& pair);

Rat sbar(const ToricPair& pair);
Rat entropy(const ToricMetric& phi, const ToricPair& pair);
Rat ricci_energy(const ToricMetric& phi, const ToricPair& pair);
Rat mabuchi(const ToricMetric& phi, const ToricPair& pair);
/// DF_B - M; throws InvariantViolation if negative.
Rat error_term(const ToricMetric& phi, const ToricPair& pair);
/// sum (1 - 1/b_E) mass_E: the expected value of the error term.
Rat reduced_defect(const ToricMetric& phi, const ToricPair& pair);

struct Ding {
    Rat L;
    Rat D;
};
/// Requires L = -K_(X,B); InputError otherwise.
Ding ding(const ToricMetric& phi, const ToricPair& pair);

struct FunctionalReport {
    Rat V, Sbar, lambda_max, lambda_min;
    Rat E, I, J;
    Rat l1, l2_squared, linf;
    Rat F0, F1, DF;
    Rat DF_boundary;  ///< DF - (-2 F1), nonzero only when B != 0
    Rat H, R, M, error_term;
    std::optional<Rat> ding_L, ding_D;
    std::int64_t N0 = 1;
};
FunctionalReport compute_report(const ToricMetric& phi, const ToricPair& pair);

/// f = min(0, l_rho - eps) toward the ray with the smallest 1 - b_rho; none if klt.
std::optional<ToricMetric> find_destabilizer(const ToricPair& pair);

struct LeadingTerm {
    bool identically_zero = false;
    bool polynomial = true;  ///< false if the grid values are not one polynomial
    int exponent = 0;
    Rat coefficient;
    UniPoly fit;
};
/// Interpolates values on the grid through all but the last point, checks the
/// last point, and reads off the lowest-order nonzero term.
LeadingTerm leading_term(const std::vector<std::pair<Rat, Rat>>& samples);

struct EpsilonFamily {
    std::vector<Rat> grid;
    std::vector<FunctionalReport> reports;
    LeadingTerm M, H, J, I, l1, l2_squared, DF, E;
    /// Coefficient of eps^n in V(M - Sbar E) = (K^log . L_eps^n) and its n+1 counterpart.
    Rat klog_coefficient;
    bool df_matches_m = true;
};
EpsilonFamily epsilon_family_asymptotics(const LatticePolytope& P, const ToricPair& pair,
                                         const Vec& vertex, const std::vector<Rat>& grid);

struct ScanViolation {
    std::size_t sample = 0;
    std::string inequality;
    std::string detail;
};

struct CoercivityScan {
    Rat delta;
    std::size_t samples = 0;
    std::size_t nontrivial = 0;
    std::optional<Rat> min_M_over_J, min_H_over_I, min_H_over_J, min_D_over_J;
    /// Inequalities that hold for every metric; any entry here is a bug.
    std::vector<ScanViolation> violations;
    /// Failures of M >= delta J and H >= delta I: delta is only a hypothesis.
    std::vector<ScanViolation> delta_violations;
};

/// Random metrics on the pair's polytope (sample i uses case_seed(seed, i)).
CoercivityScan coercivity_scan(const ToricPair& pair, const Rat& delta, std::size_t samples,
                               std::uint64_t seed);

}  // namespace kstab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kstab/measure.hpp"
#include "kstab/polytope.hpp"
#include "kstab/rat.hpp"

namespace kstab {

/// Jumps of a filtration on the degree-m sections: sorted distinct weights with
/// positive multiplicities.
class GradedWeights {
public:
    GradedWeights() = default;
    GradedWeights(std::int64_t level, std::vector<std::pair<std::int64_t, std::int64_t>> entries);

    std::int64_t level() const { return level_; }
    /// (lambda, multiplicity), lambda increasing.
    const std::vector<std::pair<std::int64_t, std::int64_t>>& entries() const { return entries_; }
    std::int64_t N() const;
    /// Sum of lambda^k weighted by multiplicity.
    Rat power_sum(unsigned k) const;
    Rat w() const { return power_sum(1); }

    friend bool operator==(const GradedWeights&, const GradedWeights&) = default;

private:
    std::int64_t level_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> entries_;
};

/// Successive minima lambda_1 >= lambda_2 >= ... in run-length form.
std::vector<std::pair<std::int64_t, std::int64_t>> successive_minima(const GradedWeights& gw);

/// (1/N_m) sum mult * delta_{lambda/m}.
PPMeasure scaled_weight_measure(const GradedWeights& gw);

using Exponent = std::vector<std::int64_t>;

/// Monomial ideal given by a minimal set of exponent vectors.
class MonomialIdeal {
public:
    MonomialIdeal(std::size_t nvars, std::vector<Exponent> generators);
    /// "x^2,y" with variables x, y, z, t; `nvars` = 0 means "as many as used".
    static MonomialIdeal parse(std::string_view text, std::size_t nvars = 0);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Exponent>& generators() const { return gens_; }
    bool is_unit() const;
    bool contains(const Exponent& u) const;
    std::string str() const;

    friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

private:
    std::size_t nvars_;
    std::vector<Exponent> gens_;
};

/// Minimal elements under the componentwise order, sorted.
std::vector<Exponent> minimal_exponents(std::vector<Exponent> exps);

/// Monomial valuation with weight w >= 0: chi^u -> <w, u>.
struct MonomialValuation {
    Vec w;

    Rat operator()(const Exponent& u) const;
    Rat operator()(const MonomialIdeal& a) const;
    bool is_trivial() const;
    /// "val_(1,2)/2" style: primitive integer vector over a common denominator.
    std::string str() const;
    friend bool operator==(const MonomialValuation&, const MonomialValuation&) = default;
};

/// Term f_lambda t^lambda of a Laurent polynomial in t, reduced to one monomial
/// of f_lambda (the valuation is monomial, so only supports matter).
struct LaurentTerm {
    Exponent u;
    Rat lambda;
};

/// Gauss extension: min over terms of v(u) + lambda.
Rat gauss_extension_eval(const MonomialValuation& v, const std::vector<LaurentTerm>& terms);

/// Newton polyhedron facet with nonnegative primitive normal w and value h = min <w, gen>.
struct NewtonFacet {
    Vec w;
    Rat h;
};

/// All facets of conv(generators) + R_{>=0}^n.
std::vector<NewtonFacet> newton_facets(const MonomialIdeal& a);

/// Rees valuations w / h over facets with h > 0, sorted.
std::vector<MonomialValuation> rees_valuations(const MonomialIdeal& a);

/// u in the integral closure of a^m, decided by the Rees valuations.
bool in_integral_closure(const Exponent& u, const MonomialIdeal& a, std::int64_t m);

/// Independent decision of the same question: searches for lambda >= 0 with
/// sum lambda = m and sum lambda_g g <= u (basic feasible solutions), and on
/// success returns d with u^d in a^{dm} verified by an explicit product.
std::optional<std::int64_t> closure_certificate(const Exponent& u, const MonomialIdeal& a,
                                                std::int64_t m);

/// True iff u^d lies in a^{dm} for some 1 <= d <= max_d (explicit products).
bool power_membership(const Exponent& u, const MonomialIdeal& a, std::int64_t m, std::int64_t max_d);

/// Rees valuations of a + (t) in n+1 variables, with the t-adic valuation first.
struct DeformationValuation {
    MonomialValuation ord;        ///< primitive integral weight in n+1 variables
    std::int64_t b = 1;           ///< ord(t)
    MonomialValuation restricted; ///< b^{-1} times ord without its t coordinate
};
std::vector<DeformationValuation> rees_of_deformation(const MonomialIdeal& a);

}  // namespace kstab

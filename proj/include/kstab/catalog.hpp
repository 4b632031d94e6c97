#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kstab/filtration.hpp"
#include "kstab/pair.hpp"
#include "kstab/testconfig.hpp"

namespace kstab {

LatticePolytope segment(const Rat& a, const Rat& b);
/// Unit simplex conv(0, e_1, ..., e_n).
LatticePolytope simplex(int n);
LatticePolytope unit_square();
/// Moment polytope of -K for P^2: conv{(-1,-1), (2,-1), (-1,2)}.
LatticePolytope anticanonical_p2();

/// "segment:L" ([0,L]), "simplex:n", "square", "square:L" ([0,L]^2),
/// "p2-anticanonical", "p1xp1-anticanonical".
LatticePolytope polytope_by_name(const std::string& name);

/// "p1-onePS:d", "pn-blowup:n,eps", "trivial:c" (on [0,1]).
ToricMetric metric_by_name(const std::string& name);

/// "trivial" (B = 0), "line:b" (coefficient b on the facet x_1 >= min),
/// "coeffs:b1,b2,..." (one per ray in facet order).
ToricPair pair_by_name(const LatticePolytope& P, const std::string& name);

/// Deterministic generator: bounded integers come from the raw 64-bit engine
/// output, so streams agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);  ///< inclusive
    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

/// Seed for case `index` of a run seeded with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

struct RandomCase {
    std::uint64_t seed = 0;
    std::string polytope_name;
    bool anticanonical = false;
    ToricMetric phi;
    ToricPair pair;
};

/// Polytopes used by the randomized suites, cycled by case index.
const std::vector<std::string>& random_polytope_names();

/// Random concave PL metric: 2-4 pieces, slopes in {-3..3}/{1,2}, constants in
/// {-2..2}/{1,2}; draws again while N0 exceeds `max_n0`.
ToricMetric random_metric(Rng& rng, const LatticePolytope& P, std::int64_t max_n0 = 12);

/// Metric plus pair for case `index`. Anticanonical polytopes get B = 0, the
/// others random coefficients in {0, 1/2, 1}.
RandomCase random_case(std::uint64_t seed, std::uint64_t index);

/// Random monomial ideal in n <= 3 variables with exponents <= 6.
MonomialIdeal random_ideal(Rng& rng);

}  // namespace kstab

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kstab/rat.hpp"
#include "kstab/unipoly.hpp"

namespace kstab {

struct Atom {
    Rat location;
    Rat mass;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// A density piece on the half-open interval [left, right).
struct DensityPiece {
    Rat left;
    Rat right;
    UniPoly density;
    friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
};

/// p-th power of the central L^p norm, plus the norm itself when it is rational.
struct LpNorm {
    /// 0 encodes p = infinity.
    int p = 1;
    Rat power;
    std::optional<Rat> value;
};

/// Compactly supported signed measure on the line: finitely many atoms plus a
/// piecewise-polynomial density. Values are canonical: atoms sorted and merged,
/// pieces sorted, disjoint, nonzero, with equal neighbours fused.
class PPMeasure {
public:
    PPMeasure() = default;
    PPMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    static PPMeasure dirac(const Rat& at, const Rat& mass = Rat(1));
    /// Uniform probability measure on [a, b], a < b.
    static PPMeasure uniform(const Rat& a, const Rat& b);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityPiece>& pieces() const { return pieces_; }

    Rat total_mass() const;
    bool is_probability() const { return total_mass() == Rat(1); }
    bool empty() const { return atoms_.empty() && pieces_.empty(); }

    /// Exact integral of lambda^k.
    Rat moment(unsigned k) const;
    Rat barycenter() const;
    /// Support bounds; the measure must be nonempty.
    Rat support_min() const;
    Rat support_max() const;

    /// mu{x >= lambda}.
    Rat cdf_tail(const Rat& lambda) const;
    /// mu{x > lambda}.
    Rat cdf_tail_open(const Rat& lambda) const;

    /// Central L^p norm of lambda - barycenter for integer p >= 1, or p = 0 for infinity.
    LpNorm central_lp_norm(int p) const;

    /// Image under lambda -> alpha * lambda + beta, alpha != 0.
    PPMeasure pushforward_affine(const Rat& alpha, const Rat& beta) const;

    /// Every breakpoint and atom location, sorted and deduplicated.
    std::vector<Rat> breakpoints() const;

    /// Rows "piece,left,right,c0,c1,..." and "atom,location,mass".
    std::string to_csv() const;

    friend bool operator==(const PPMeasure&, const PPMeasure&) = default;

private:
    void canonicalize();
    std::vector<Atom> atoms_;
    std::vector<DensityPiece> pieces_;
};

std::ostream& operator<<(std::ostream& os, const PPMeasure& mu);

struct ConcavityCheck {
    bool holds = true;
    std::optional<Rat> witness;  ///< a midpoint where the inequality fails
};

/// Checks concavity of lambda -> mu{x >= lambda}^(1/n) on (support_min, support_max)
/// at breakpoints and interval midpoints. Exact for n <= 2.
ConcavityCheck check_tail_root_concavity(const PPMeasure& mu, int n, int refine = 4);

}  // namespace kstab

#pragma once

#include <vector>

#include "kstab/polytope.hpp"
#include "kstab/unipoly.hpp"

namespace kstab {

/// x -> <a, x> + c.
struct AffinePiece {
    Vec a;
    Rat c;

    Rat operator()(const Vec& x) const { return dot(a, x) + c; }
    friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

bool operator<(const AffinePiece& p, const AffinePiece& q);

/// Concave piecewise-affine function, the minimum of its pieces.
class PLFunction {
public:
    PLFunction() = default;
    explicit PLFunction(std::vector<AffinePiece> pieces);
    static PLFunction constant(int dim, const Rat& c);

    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    int dim() const;
    Rat operator()(const Vec& x) const;
    /// Index of a piece attaining the minimum at x (lowest index on ties).
    std::size_t active_piece(const Vec& x) const;

    /// Drops pieces whose active region in P is not full-dimensional; the
    /// survivors are sorted, so equal functions on P give equal results.
    PLFunction canonical(const LatticePolytope& P) const;

    /// True iff both functions take the same values on P.
    bool equal_on(const LatticePolytope& P, const PLFunction& other) const;

    friend bool operator==(const PLFunction&, const PLFunction&) = default;

private:
    std::vector<AffinePiece> pieces_;
};

struct LinearityCell {
    LatticePolytope cell;
    AffinePiece piece;
};

/// Full-dimensional cells of P on which f agrees with one of its pieces.
std::vector<LinearityCell> linearity_domains(const LatticePolytope& P, const PLFunction& f);

/// Values of f at every vertex of every linearity cell, sorted and deduplicated.
std::vector<Rat> subdivision_values(const LatticePolytope& P, const PLFunction& f);
/// Every vertex of every linearity cell.
std::vector<Vec> subdivision_vertices(const LatticePolytope& P, const PLFunction& f);

/// lambda -> vol{x in P : f(x) >= lambda}, piecewise polynomial of degree <= n.
class SuperlevelVolume {
public:
    SuperlevelVolume(const LatticePolytope& P, const PLFunction& f);

    const std::vector<Rat>& breakpoints() const { return breaks_; }
    /// Polynomial on [breakpoints[i], breakpoints[i+1]].
    const std::vector<UniPoly>& polys() const { return polys_; }
    const Rat& total() const { return total_; }
    Rat operator()(const Rat& lambda) const;

private:
    std::vector<Rat> breaks_;
    std::vector<UniPoly> polys_;
    Rat total_;
};

/// Direct evaluation of vol{x in P : f(x) >= lambda}.
Rat superlevel_volume_at(const LatticePolytope& P, const PLFunction& f, const Rat& lambda);

}  // namespace kstab

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kstab/rat.hpp"

namespace kstab {

/// Inequality <normal, x> >= offset.
struct Halfspace {
    Vec normal;
    Rat offset;
};

/// Facet with primitive integral inner normal: the polytope lies in <normal, x> >= offset.
struct Facet {
    Vec normal;
    Rat offset;
    friend bool operator==(const Facet&, const Facet&) = default;
};

/// Rational polytope in R^d held in both V- and H-representation, with a
/// triangulation for exact volumes and integrals. Lower-dimensional polytopes
/// are allowed; they carry vertices only and have zero d-volume.
class LatticePolytope {
public:
    LatticePolytope() = default;

    /// Convex hull of a nonempty point set in R^d.
    static LatticePolytope from_points(std::vector<Vec> points);
    /// {x : every halfspace holds}; nullopt if empty. Must be bounded.
    static std::optional<LatticePolytope> from_halfspaces(int dim, const std::vector<Halfspace>& hs);

    int dim() const { return dim_; }
    int affine_dim() const { return affine_dim_; }
    bool full_dimensional() const { return affine_dim_ == dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    std::vector<Halfspace> halfspaces() const;
    const Rat& volume() const { return volume_; }
    /// Simplices (d+1 points each) triangulating a full-dimensional polytope.
    const std::vector<std::vector<Vec>>& simplices() const { return simplices_; }

    bool contains(const Vec& x) const;
    Rat min_of(const Vec& a) const;
    Rat max_of(const Vec& a) const;
    /// Integral of x -> <a, x> + c over the polytope.
    Rat integrate_affine(const Vec& a, const Rat& c) const;
    /// Facets (indices into facets()) containing the vertex `v`.
    std::vector<std::size_t> facets_through(const Vec& v) const;
    /// Vertices lying on facet `f`.
    std::vector<Vec> facet_vertices(std::size_t f) const;

    LatticePolytope scaled(const Rat& s) const;
    LatticePolytope translated(const Vec& t) const;
    /// Embeds P in R^{d+1} as P x {height}.
    LatticePolytope lifted(const Rat& height) const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

private:
    int dim_ = 0;
    int affine_dim_ = -1;
    std::vector<Vec> vertices_;
    std::vector<Facet> facets_;
    std::vector<std::vector<Vec>> simplices_;
    Rat volume_;
};

/// Mixed volume of N bodies in R^N, normalized so MV(K, ..., K) = vol(K).
Rat mixed_volume(const std::vector<LatticePolytope>& bodies);

/// Minkowski sum of nonnegative integer multiples of bodies in a common R^d.
LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& bodies,
                              const std::vector<int>& multiples);

using LatticePoint = std::vector<std::int64_t>;

/// Visits every integer point of m * P (P full-dimensional), lexicographically.
void for_each_lattice_point(const LatticePolytope& P, std::int64_t m,
                            const std::function<void(const LatticePoint&)>& visit);
std::vector<LatticePoint> lattice_points(const LatticePolytope& P, std::int64_t m);
std::int64_t count_lattice_points(const LatticePolytope& P, std::int64_t m);

/// (d-1)-volume of a facet measured in the lattice of its affine span.
Rat facet_lattice_volume(const LatticePolytope& P, const Facet& facet);

/// Lattice basis of the hyperplane orthogonal to a primitive integral normal.
std::vector<Vec> facet_lattice_basis(const Vec& normal);

/// Integral of <a, x> + c over the face of P cut out by the supporting hyperplane
/// of `facet` (any primitive normal and offset), against lattice-normalized
/// (d-1)-volume. Zero if that face is lower-dimensional.
Rat face_lattice_integral(const LatticePolytope& P, const Facet& facet, const Vec& a, const Rat& c);

}  // namespace kstab

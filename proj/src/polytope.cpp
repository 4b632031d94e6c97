#include "kstab/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

namespace {

Rat factorial(int n) {
    Rat f = 1;
    for (int k = 2; k <= n; ++k) f *= Rat(k);
    return f;
}

std::vector<Vec> dedupe(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), VecLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

struct HullResult {
    int affine_dim = -1;
    std::vector<Vec> vertices;
    std::vector<Facet> facets;
    std::vector<std::vector<Vec>> simplices;
    Rat volume;
};

// Beneath-beyond on a full-dimensional point set; pts are distinct and
// `seed` indexes d+1 affinely independent points.
HullResult full_hull(const std::vector<Vec>& pts, const std::vector<std::size_t>& seed, int d) {
    struct BFacet {
        std::vector<std::size_t> idx;  // sorted
        Vec n;                         // outward
        Rat off;
    };
    Vec c(static_cast<std::size_t>(d));
    for (auto i : seed) c = c + pts[i];
    c = Rat(1) / Rat(d + 1) * c;

    auto make_facet = [&](std::vector<std::size_t> idx) {
        std::sort(idx.begin(), idx.end());
        std::vector<const Vec*> ps;
        for (auto i : idx) ps.push_back(&pts[i]);
        BFacet f{std::move(idx), linalg::hyperplane_normal(ps), Rat()};
        f.off = dot(f.n, *ps.front());
        if (dot(f.n, c) > f.off) {
            f.n = Rat(-1) * f.n;
            f.off = -f.off;
        }
        return f;
    };

    std::vector<BFacet> facets;
    for (std::size_t skip = 0; skip < seed.size(); ++skip) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < seed.size(); ++j)
            if (j != skip) idx.push_back(seed[j]);
        facets.push_back(make_facet(std::move(idx)));
    }

    std::vector<bool> in_seed(pts.size(), false);
    for (auto i : seed) in_seed[i] = true;
    for (std::size_t p = 0; p < pts.size(); ++p) {
        if (in_seed[p]) continue;
        std::vector<bool> visible(facets.size(), false);
        bool any = false;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (dot(facets[f].n, pts[p]) > facets[f].off) {
                visible[f] = true;
                any = true;
            }
        }
        if (!any) continue;
        std::map<std::vector<std::size_t>, int> ridges;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!visible[f]) continue;
            const auto& idx = facets[f].idx;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                std::vector<std::size_t> r;
                for (std::size_t k = 0; k < idx.size(); ++k)
                    if (k != j) r.push_back(idx[k]);
                ++ridges[r];
            }
        }
        std::vector<BFacet> next;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (!visible[f]) next.push_back(std::move(facets[f]));
        for (auto& [r, count] : ridges) {
            if (count != 1) continue;
            auto idx = r;
            idx.push_back(p);
            next.push_back(make_facet(std::move(idx)));
        }
        facets = std::move(next);
    }

    HullResult out;
    out.affine_dim = d;
    std::map<Vec, Rat, VecLess> planes;
    std::set<std::size_t> used;
    const Rat dfact = factorial(d);
    for (const auto& f : facets) {
        Vec inner = primitive_integer(Rat(-1) * f.n);
        planes.emplace(inner, dot(inner, pts[f.idx.front()]));
        for (auto i : f.idx) used.insert(i);
        linalg::Mat m;
        std::vector<Vec> simplex{c};
        for (auto i : f.idx) {
            m.push_back(pts[i] - c);
            simplex.push_back(pts[i]);
        }
        out.volume += abs(linalg::det(std::move(m))) / dfact;
        out.simplices.push_back(std::move(simplex));
    }
    for (auto& [n, off] : planes) out.facets.push_back({n, off});
    for (auto i : used) {
        linalg::Mat normals;
        for (const auto& f : out.facets)
            if (dot(f.normal, pts[i]) == f.offset) normals.push_back(f.normal);
        if (linalg::rank(normals) == d) out.vertices.push_back(pts[i]);
    }
    std::sort(out.vertices.begin(), out.vertices.end(), VecLess{});
    return out;
}

HullResult hull(std::vector<Vec> pts, int d) {
    pts = dedupe(std::move(pts));
    if (pts.empty()) throw InputError("convex hull of an empty point set");
    // Greedy affinely independent seed.
    std::vector<std::size_t> seed{0};
    linalg::Mat dirs;
    for (std::size_t i = 1; i < pts.size() && static_cast<int>(seed.size()) <= d; ++i) {
        dirs.push_back(pts[i] - pts[0]);
        if (linalg::rank(dirs) == static_cast<int>(dirs.size())) {
            seed.push_back(i);
        } else {
            dirs.pop_back();
        }
    }
    const int k = static_cast<int>(dirs.size());
    if (k == d) return full_hull(pts, seed, d);

    HullResult out;
    out.affine_dim = k;
    if (k == 0) {
        out.vertices = {pts[0]};
        return out;
    }
    // Coordinates in the affine hull, then hull there.
    linalg::Mat b = dirs;
    linalg::Mat rr = b;
    std::vector<std::size_t> piv;
    {
        // pivot coordinates: columns where the direction block has full rank
        linalg::Mat cols;
        for (std::size_t c = 0; c < static_cast<std::size_t>(d) && static_cast<int>(piv.size()) < k; ++c) {
            Vec col;
            for (const auto& row : b) col.push_back(row[c]);
            cols.push_back(col);
            if (linalg::rank(cols) == static_cast<int>(cols.size())) {
                piv.push_back(c);
            } else {
                cols.pop_back();
            }
        }
    }
    linalg::Mat sq(static_cast<std::size_t>(k), Vec(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sq[i][j] = b[j][piv[i]];
    std::vector<Vec> local;
    for (const auto& p : pts) {
        Vec diff = p - pts[0];
        Vec rhs;
        for (auto c : piv) rhs.push_back(diff[c]);
        local.push_back(*linalg::solve(sq, rhs));
    }
    HullResult sub = hull(local, k);
    for (const auto& y : sub.vertices) {
        Vec p = pts[0];
        for (int j = 0; j < k; ++j) p = p + y[j] * b[j];
        out.vertices.push_back(std::move(p));
    }
    std::sort(out.vertices.begin(), out.vertices.end(), VecLess{});
    return out;
}

}  // namespace

LatticePolytope LatticePolytope::from_points(std::vector<Vec> points) {
    if (points.empty()) throw InputError("polytope needs at least one point");
    const int d = static_cast<int>(points.front().size());
    for (const auto& p : points)
        if (static_cast<int>(p.size()) != d) throw InputError("polytope points of mixed dimension");
    HullResult h = hull(std::move(points), d);
    LatticePolytope P;
    P.dim_ = d;
    P.affine_dim_ = h.affine_dim;
    P.vertices_ = std::move(h.vertices);
    P.facets_ = std::move(h.facets);
    P.simplices_ = std::move(h.simplices);
    P.volume_ = h.volume;
    return P;
}

std::optional<LatticePolytope> LatticePolytope::from_halfspaces(int dim,
                                                                const std::vector<Halfspace>& hs) {
    const std::size_t d = static_cast<std::size_t>(dim);
    std::vector<Vec> pts;
    std::vector<std::size_t> pick(d);
    // Enumerate d-subsets of the constraints.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == d) {
            linalg::Mat m;
            Vec rhs;
            for (auto i : pick) {
                m.push_back(hs[i].normal);
                rhs.push_back(hs[i].offset);
            }
            auto x = linalg::solve(std::move(m), std::move(rhs));
            if (!x) return;
            for (const auto& h : hs)
                if (dot(h.normal, *x) < h.offset) return;
            pts.push_back(std::move(*x));
            return;
        }
        for (std::size_t i = start; i < hs.size(); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    if (pts.empty()) return std::nullopt;
    return from_points(std::move(pts));
}

std::vector<Halfspace> LatticePolytope::halfspaces() const {
    std::vector<Halfspace> out;
    for (const auto& f : facets_) out.push_back({f.normal, f.offset});
    return out;
}

bool LatticePolytope::contains(const Vec& x) const {
    if (!full_dimensional()) throw InputError("contains() needs a full-dimensional polytope");
    for (const auto& f : facets_)
        if (dot(f.normal, x) < f.offset) return false;
    return true;
}

Rat LatticePolytope::min_of(const Vec& a) const {
    Rat best = dot(a, vertices_.front());
    for (const auto& v : vertices_) best = min(best, dot(a, v));
    return best;
}

Rat LatticePolytope::max_of(const Vec& a) const {
    Rat best = dot(a, vertices_.front());
    for (const auto& v : vertices_) best = max(best, dot(a, v));
    return best;
}

Rat LatticePolytope::integrate_affine(const Vec& a, const Rat& c) const {
    Rat total;
    const Rat d = factorial(dim_);
    for (const auto& s : simplices_) {
        linalg::Mat m;
        Vec centroid(static_cast<std::size_t>(dim_));
        for (std::size_t i = 0; i < s.size(); ++i) {
            centroid = centroid + s[i];
            if (i > 0) m.push_back(s[i] - s[0]);
        }
        centroid = Rat(1) / Rat(static_cast<long>(s.size())) * centroid;
        total += abs(linalg::det(std::move(m))) / d * (dot(a, centroid) + c);
    }
    return total;
}

std::vector<std::size_t> LatticePolytope::facets_through(const Vec& v) const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < facets_.size(); ++f)
        if (dot(facets_[f].normal, v) == facets_[f].offset) out.push_back(f);
    return out;
}

std::vector<Vec> LatticePolytope::facet_vertices(std::size_t f) const {
    std::vector<Vec> out;
    for (const auto& v : vertices_)
        if (dot(facets_[f].normal, v) == facets_[f].offset) out.push_back(v);
    return out;
}

LatticePolytope LatticePolytope::scaled(const Rat& s) const {
    std::vector<Vec> pts;
    for (const auto& v : vertices_) pts.push_back(s * v);
    return from_points(std::move(pts));
}

LatticePolytope LatticePolytope::translated(const Vec& t) const {
    std::vector<Vec> pts;
    for (const auto& v : vertices_) pts.push_back(v + t);
    return from_points(std::move(pts));
}

LatticePolytope LatticePolytope::lifted(const Rat& height) const {
    std::vector<Vec> pts;
    for (auto v : vertices_) {
        v.push_back(height);
        pts.push_back(std::move(v));
    }
    return from_points(std::move(pts));
}

LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& bodies,
                              const std::vector<int>& multiples) {
    if (bodies.empty()) throw InputError("minkowski_sum of no bodies");
    const std::size_t d = static_cast<std::size_t>(bodies.front().dim());
    std::vector<Vec> acc{Vec(d)};
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        if (multiples[i] == 0) continue;
        if (bodies[i].dim() != static_cast<int>(d)) throw InputError("minkowski_sum: dimension mismatch");
        std::vector<Vec> next;
        for (const auto& a : acc)
            for (const auto& v : bodies[i].vertices()) next.push_back(a + Rat(multiples[i]) * v);
        acc = LatticePolytope::from_points(std::move(next)).vertices();
    }
    return LatticePolytope::from_points(std::move(acc));
}

Rat mixed_volume(const std::vector<LatticePolytope>& bodies) {
    const std::size_t N = bodies.size();
    if (N == 0) throw InputError("mixed_volume of no bodies");
    for (const auto& b : bodies)
        if (b.dim() != static_cast<int>(N))
            throw InputError("mixed_volume: " + std::to_string(N) + " bodies must live in R^" +
                             std::to_string(N));
    // Distinct bodies and their slot multiplicities.
    std::vector<LatticePolytope> distinct;
    std::vector<std::size_t> slot_of(N);
    for (std::size_t i = 0; i < N; ++i) {
        auto it = std::find(distinct.begin(), distinct.end(), bodies[i]);
        slot_of[i] = static_cast<std::size_t>(it - distinct.begin());
        if (it == distinct.end()) distinct.push_back(bodies[i]);
    }
    std::map<std::vector<int>, Rat> memo;
    auto volume_of = [&](std::vector<int> counts) {
        int g = 0;
        for (int c : counts) g = std::gcd(g, c);
        for (int& c : counts) c /= g;
        auto it = memo.find(counts);
        Rat v;
        if (it != memo.end()) {
            v = it->second;
        } else {
            v = minkowski_sum(distinct, counts).volume();
            memo.emplace(counts, v);
        }
        return v * Rat(g).pow(static_cast<unsigned>(N));
    };
    Rat total;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
        std::vector<int> counts(distinct.size(), 0);
        int size = 0;
        for (std::size_t i = 0; i < N; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                ++counts[slot_of[i]];
                ++size;
            }
        }
        Rat v = volume_of(std::move(counts));
        if ((N - static_cast<std::size_t>(size)) % 2 == 0) {
            total += v;
        } else {
            total -= v;
        }
    }
    return total / factorial(static_cast<int>(N));
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct IntConstraint {
    std::vector<std::int64_t> u;
    std::int64_t bound;  // <u, x> >= bound
};

}  // namespace

void for_each_lattice_point(const LatticePolytope& P, std::int64_t m,
                            const std::function<void(const LatticePoint&)>& visit) {
    if (!P.full_dimensional()) throw InputError("lattice points of a lower-dimensional polytope");
    if (m < 1) throw InputError("lattice_points: m must be >= 1");
    const std::size_t d = static_cast<std::size_t>(P.dim());
    std::vector<IntConstraint> cons;
    for (const auto& f : P.facets()) {
        IntConstraint c;
        for (const auto& x : f.normal) c.u.push_back(x.to_int64());
        c.bound = to_int64((f.offset * Rat(m)).ceil());
        cons.push_back(std::move(c));
    }
    std::vector<std::int64_t> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d);
        e[i] = 1;
        lo[i] = to_int64((P.min_of(e) * Rat(m)).ceil());
        hi[i] = to_int64((P.max_of(e) * Rat(m)).floor());
    }
    LatticePoint x(d);
    const std::size_t last = d - 1;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == last) {
            std::int64_t a = lo[last], b = hi[last];
            for (const auto& c : cons) {
                std::int64_t rest = c.bound;
                for (std::size_t i = 0; i < last; ++i) rest -= c.u[i] * x[i];
                std::int64_t ul = c.u[last];
                if (ul > 0) {
                    a = std::max(a, ceil_div(rest, ul));
                } else if (ul < 0) {
                    b = std::min(b, floor_div(rest, ul));
                } else if (rest > 0) {
                    return;
                }
            }
            for (std::int64_t t = a; t <= b; ++t) {
                x[last] = t;
                visit(x);
            }
            return;
        }
        for (std::int64_t t = lo[k]; t <= hi[k]; ++t) {
            x[k] = t;
            rec(k + 1);
        }
    };
    rec(0);
}

std::vector<LatticePoint> lattice_points(const LatticePolytope& P, std::int64_t m) {
    std::vector<LatticePoint> out;
    for_each_lattice_point(P, m, [&](const LatticePoint& x) { out.push_back(x); });
    return out;
}

std::int64_t count_lattice_points(const LatticePolytope& P, std::int64_t m) {
    std::int64_t n = 0;
    for_each_lattice_point(P, m, [&](const LatticePoint&) { ++n; });
    return n;
}

std::vector<Vec> facet_lattice_basis(const Vec& normal) {
    const std::size_t d = normal.size();
    // Column operations reducing the primitive normal u to a unit vector; the
    // remaining columns of the accumulated unimodular matrix span u^perp in Z^d.
    std::vector<std::int64_t> r;
    for (const auto& x : normal) r.push_back(x.to_int64());
    std::vector<std::vector<std::int64_t>> C(d, std::vector<std::int64_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) C[i][i] = 1;
    for (;;) {
        std::size_t piv = d;
        for (std::size_t i = 0; i < d; ++i)
            if (r[i] != 0 && (piv == d || std::llabs(r[i]) < std::llabs(r[piv]))) piv = i;
        if (piv == d) throw InputError("facet_lattice_basis: zero normal");
        bool done = true;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == piv || r[j] == 0) continue;
            done = false;
            std::int64_t q = floor_div(r[j], r[piv]);
            r[j] -= q * r[piv];
            for (std::size_t i = 0; i < d; ++i) C[i][j] -= q * C[i][piv];
        }
        if (!done) continue;
        if (std::llabs(r[piv]) != 1) throw InputError("facet_lattice_basis: normal is not primitive");
        std::vector<Vec> basis;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == piv) continue;
            Vec col;
            for (std::size_t i = 0; i < d; ++i) col.push_back(Rat(C[i][j]));
            basis.push_back(std::move(col));
        }
        return basis;
    }
}

namespace {

// Face of P on the hyperplane of `facet`, in coordinates of a lattice basis of the hyperplane.
std::optional<std::pair<LatticePolytope, std::vector<Vec>>> facet_chart(const LatticePolytope& P,
                                                                       const Facet& facet, Vec& origin) {
    std::vector<Vec> verts;
    for (const auto& v : P.vertices())
        if (dot(facet.normal, v) == facet.offset) verts.push_back(v);
    if (verts.empty()) return std::nullopt;
    const std::size_t d = facet.normal.size();
    auto basis = facet_lattice_basis(facet.normal);
    // Full basis: hyperplane basis plus the normal itself keeps the system square.
    linalg::Mat m(d, Vec(d));
    for (std::size_t j = 0; j + 1 < d; ++j)
        for (std::size_t i = 0; i < d; ++i) m[i][j] = basis[j][i];
    for (std::size_t i = 0; i < d; ++i) m[i][d - 1] = facet.normal[i];
    origin = verts.front();
    std::vector<Vec> local;
    for (const auto& v : verts) {
        auto y = linalg::solve(m, v - origin);
        local.emplace_back(y->begin(), y->end() - 1);
    }
    return std::make_pair(LatticePolytope::from_points(std::move(local)), std::move(basis));
}

}  // namespace

Rat facet_lattice_volume(const LatticePolytope& P, const Facet& facet) {
    auto it = std::find(P.facets().begin(), P.facets().end(), facet);
    if (it == P.facets().end()) throw InputError("facet_lattice_volume: not a facet of the polytope");
    if (P.dim() == 1) return Rat(1);
    Vec origin;
    return facet_chart(P, facet, origin)->first.volume();
}

Rat face_lattice_integral(const LatticePolytope& P, const Facet& facet, const Vec& a, const Rat& c) {
    if (P.dim() == 1) {
        for (const auto& v : P.vertices())
            if (dot(facet.normal, v) == facet.offset) return dot(a, v) + c;
        return Rat(0);
    }
    Vec origin;
    auto chart = facet_chart(P, facet, origin);
    if (!chart || !chart->first.full_dimensional()) return Rat(0);
    Vec b;
    for (const auto& e : chart->second) b.push_back(dot(a, e));
    return chart->first.integrate_affine(b, dot(a, origin) + c);
}

}  // namespace kstab

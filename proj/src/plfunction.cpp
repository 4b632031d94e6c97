#include "kstab/plfunction.hpp"

#include <algorithm>

#include "kstab/errors.hpp"

namespace kstab {

bool operator<(const AffinePiece& p, const AffinePiece& q) {
    if (p.a != q.a) return VecLess{}(p.a, q.a);
    return p.c < q.c;
}

PLFunction::PLFunction(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InputError("PL function needs at least one piece");
    for (const auto& p : pieces_)
        if (p.a.size() != pieces_.front().a.size()) throw InputError("PL pieces of mixed dimension");
}

PLFunction PLFunction::constant(int dim, const Rat& c) {
    return PLFunction({AffinePiece{Vec(static_cast<std::size_t>(dim)), c}});
}

int PLFunction::dim() const { return pieces_.empty() ? 0 : static_cast<int>(pieces_.front().a.size()); }

Rat PLFunction::operator()(const Vec& x) const { return pieces_[active_piece(x)](x); }

std::size_t PLFunction::active_piece(const Vec& x) const {
    std::size_t best = 0;
    Rat v = pieces_[0](x);
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        Rat w = pieces_[i](x);
        if (w < v) {
            v = w;
            best = i;
        }
    }
    return best;
}

namespace {

std::vector<AffinePiece> distinct(std::vector<AffinePiece> ps) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

std::optional<LatticePolytope> cell_of(const LatticePolytope& P, const std::vector<AffinePiece>& ps,
                                       std::size_t i) {
    auto hs = P.halfspaces();
    for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == i) continue;
        // <a_j - a_i, x> >= c_i - c_j
        hs.push_back({ps[j].a - ps[i].a, ps[i].c - ps[j].c});
    }
    return LatticePolytope::from_halfspaces(P.dim(), hs);
}

void check_dims(const LatticePolytope& P, const PLFunction& f) {
    if (!P.full_dimensional()) throw InputError("polytope must be full-dimensional");
    if (f.dim() != P.dim()) throw InputError("PL function and polytope differ in dimension");
}

}  // namespace

std::vector<LinearityCell> linearity_domains(const LatticePolytope& P, const PLFunction& f) {
    check_dims(P, f);
    auto ps = distinct(f.pieces());
    std::vector<LinearityCell> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto cell = cell_of(P, ps, i);
        if (cell && cell->full_dimensional()) out.push_back({std::move(*cell), ps[i]});
    }
    return out;
}

PLFunction PLFunction::canonical(const LatticePolytope& P) const {
    std::vector<AffinePiece> kept;
    for (auto& c : linearity_domains(P, *this)) kept.push_back(std::move(c.piece));
    return PLFunction(std::move(kept));
}

std::vector<Vec> subdivision_vertices(const LatticePolytope& P, const PLFunction& f) {
    std::vector<Vec> out;
    for (const auto& c : linearity_domains(P, f))
        for (const auto& v : c.cell.vertices()) out.push_back(v);
    std::sort(out.begin(), out.end(), VecLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Rat> subdivision_values(const LatticePolytope& P, const PLFunction& f) {
    std::vector<Rat> out;
    for (const auto& v : subdivision_vertices(P, f)) out.push_back(f(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool PLFunction::equal_on(const LatticePolytope& P, const PLFunction& other) const {
    // f - q is concave and affine on each cell of f for every piece q of g, so
    // f <= g on P iff it holds at the subdivision vertices of f; symmetrically.
    for (const auto& v : subdivision_vertices(P, *this))
        if ((*this)(v) != other(v)) return false;
    for (const auto& v : subdivision_vertices(P, other))
        if ((*this)(v) != other(v)) return false;
    return true;
}

Rat superlevel_volume_at(const LatticePolytope& P, const PLFunction& f, const Rat& lambda) {
    auto hs = P.halfspaces();
    for (const auto& p : f.pieces()) hs.push_back({p.a, lambda - p.c});
    auto Q = LatticePolytope::from_halfspaces(P.dim(), hs);
    if (!Q || !Q->full_dimensional()) return Rat(0);
    return Q->volume();
}

SuperlevelVolume::SuperlevelVolume(const LatticePolytope& P, const PLFunction& f) : total_(P.volume()) {
    check_dims(P, f);
    breaks_ = subdivision_values(P, f);
    const int n = P.dim();
    for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) {
        const Rat& lo = breaks_[k];
        const Rat width = breaks_[k + 1] - lo;
        std::vector<std::pair<Rat, Rat>> pts;
        for (int j = 1; j <= n + 1; ++j) {
            Rat x = lo + width * Rat(j, n + 2);
            pts.emplace_back(x, superlevel_volume_at(P, f, x));
        }
        polys_.push_back(interpolate(pts));
    }
    if (breaks_.size() == 1) {
        // Constant function: only the value at the single breakpoint matters.
        polys_.push_back(UniPoly::constant(total_));
    }
}

Rat SuperlevelVolume::operator()(const Rat& lambda) const {
    if (lambda <= breaks_.front()) return total_;
    if (lambda > breaks_.back()) return Rat(0);
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), lambda);
    std::size_t k = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return polys_[k](lambda);
}

}  // namespace kstab

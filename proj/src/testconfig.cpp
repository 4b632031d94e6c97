#include "kstab/testconfig.hpp"

#include <algorithm>
#include <map>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

std::int64_t floor_div128(__int128 a, std::int64_t b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<std::int64_t>(q);
}

}  // namespace

ToricMetric::ToricMetric(LatticePolytope P, const PLFunction& f) : P_(std::move(P)) {
    if (!P_.full_dimensional()) throw InputError("metric needs a full-dimensional polytope");
    f_ = f.canonical(P_);
    std::vector<Rat> dens;
    for (const auto& v : P_.vertices()) dens.insert(dens.end(), v.begin(), v.end());
    for (const auto& p : f_.pieces()) {
        dens.insert(dens.end(), p.a.begin(), p.a.end());
        dens.push_back(p.c);
    }
    const auto verts = subdivision_vertices(P_, f_);
    for (const auto& v : verts) {
        dens.insert(dens.end(), v.begin(), v.end());
        dens.push_back(f_(v));
    }
    N0_ = to_int64(lcm_of_denominators(dens));
    lambda_max_ = f_(verts.front());
    lambda_min_ = lambda_max_;
    for (const auto& v : verts) {
        lambda_max_ = max(lambda_max_, f_(v));
        lambda_min_ = min(lambda_min_, f_(v));
    }
    std::vector<Rat> coeffs;
    for (const auto& p : f_.pieces()) {
        coeffs.insert(coeffs.end(), p.a.begin(), p.a.end());
        coeffs.push_back(p.c);
    }
    q_ = to_int64(lcm_of_denominators(coeffs));
    const Rat q(static_cast<long>(q_));
    for (const auto& p : f_.pieces()) {
        std::vector<std::int64_t> row;
        for (const auto& x : p.a) row.push_back((x * q).to_int64());
        A_.push_back(std::move(row));
        C_.push_back((p.c * q).to_int64());
    }
}

ToricMetric ToricMetric::trivial(const LatticePolytope& P, const Rat& c) {
    return ToricMetric(P, PLFunction::constant(P.dim(), c));
}

ToricMetric ToricMetric::from_one_ps(const LatticePolytope& P, const Vec& a, const Rat& c) {
    return ToricMetric(P, PLFunction({AffinePiece{a, c}}));
}

ToricMetric ToricMetric::deformation_to_normal_cone(const LatticePolytope& P, const Vec& v0,
                                                    const Rat& eps) {
    if (std::find(P.vertices().begin(), P.vertices().end(), v0) == P.vertices().end())
        throw InputError("deformation_to_normal_cone: " + to_string(v0) + " is not a vertex");
    if (eps.sign() <= 0) throw InputError("deformation_to_normal_cone: eps must be positive");
    Vec u(static_cast<std::size_t>(P.dim()));
    for (auto f : P.facets_through(v0)) u = u + P.facets()[f].normal;
    // The cut l = eps must separate v0 from every other vertex.
    for (const auto& v : P.vertices()) {
        if (v == v0) continue;
        if (dot(u, v - v0) <= eps)
            throw InputError("not relatively ample: eps = " + eps.str() + " reaches vertex " + to_string(v));
    }
    const Vec zero(static_cast<std::size_t>(P.dim()));
    return ToricMetric(P, PLFunction({AffinePiece{zero, Rat(0)}, AffinePiece{u, -dot(u, v0) - eps}}));
}

ToricMetric ToricMetric::translate(const Rat& c) const {
    std::vector<AffinePiece> ps = f_.pieces();
    for (auto& p : ps) p.c += c;
    return ToricMetric(P_, PLFunction(std::move(ps)));
}

ToricMetric ToricMetric::scale_base_change(std::int64_t d) const {
    if (d < 1) throw InputError("base change degree must be >= 1");
    const Rat r(static_cast<long>(d));
    std::vector<AffinePiece> ps = f_.pieces();
    for (auto& p : ps) {
        p.a = r * p.a;
        p.c *= r;
    }
    return ToricMetric(P_, PLFunction(std::move(ps)));
}

std::int64_t ToricMetric::weight(const LatticePoint& u, std::int64_t m) const {
    __int128 best = 0;
    for (std::size_t i = 0; i < A_.size(); ++i) {
        __int128 s = static_cast<__int128>(C_[i]) * m;
        for (std::size_t j = 0; j < u.size(); ++j) s += static_cast<__int128>(A_[i][j]) * u[j];
        if (i == 0 || s < best) best = s;
    }
    return floor_div128(best, q_);
}

GradedWeights ToricMetric::filtration_of(std::int64_t m) const {
    std::map<std::int64_t, std::int64_t> counts;
    for_each_lattice_point(P_, m, [&](const LatticePoint& u) { ++counts[weight(u, m)]; });
    return GradedWeights(m, {counts.begin(), counts.end()});
}

std::vector<LatticePoint> ToricMetric::flag_ideal_piece(std::int64_t m, std::int64_t lambda) const {
    std::vector<LatticePoint> out;
    for_each_lattice_point(P_, m, [&](const LatticePoint& u) {
        if (weight(u, m) >= lambda) out.push_back(u);
    });
    return out;
}

std::vector<ComponentData> ToricMetric::components(const ToricPair& pair, bool include_trivial) const {
    if (!(pair.polytope() == P_) || pair.polytope().facets() != P_.facets())
        throw InputError("pair and metric live on different polytopes");
    std::vector<ComponentData> out;
    bool has_trivial = false;
    for (auto& cell : linearity_domains(P_, f_)) {
        ComponentData c;
        c.piece = cell.piece;
        c.b = to_int64(lcm_of_denominators(cell.piece.a));
        c.w = Rat(static_cast<long>(c.b)) * cell.piece.a;
        c.valuation.w = cell.piece.a;
        c.mass = cell.cell.volume() / P_.volume();
        c.A = toric_log_discrepancy(pair, cell.piece.a);
        c.phi_value = cell.piece.c + P_.min_of(cell.piece.a);
        c.cell = std::move(cell.cell);
        has_trivial = has_trivial || c.trivial();
        out.push_back(std::move(c));
    }
    if (include_trivial && !has_trivial) {
        ComponentData c;
        const Vec zero(static_cast<std::size_t>(P_.dim()));
        c.piece = {zero, lambda_max_};
        c.w = zero;
        c.valuation.w = zero;
        c.phi_value = lambda_max_;
        out.push_back(std::move(c));
    }
    return out;
}

PPMeasure ToricMetric::dh_exact() const {
    if (lambda_min_ == lambda_max_) return PPMeasure::dirac(lambda_max_);
    SuperlevelVolume S(P_, f_);
    const auto& br = S.breakpoints();
    std::vector<DensityPiece> pieces;
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
        pieces.push_back({br[k], br[k + 1], Rat(-1) / P_.volume() * S.polys()[k].derivative()});
    std::vector<Atom> atoms;
    Rat top = S.polys().back()(br.back());
    if (!top.is_zero()) atoms.push_back({br.back(), top / P_.volume()});
    return PPMeasure(std::move(atoms), std::move(pieces));
}

bool ToricMetric::is_almost_trivial() const {
    const bool affine_flat = f_.pieces().size() == 1 &&
                             std::all_of(f_.pieces()[0].a.begin(), f_.pieces()[0].a.end(),
                                         [](const Rat& x) { return x.is_zero(); });
    const PPMeasure dh = dh_exact();
    const bool dirac = dh.pieces().empty() && dh.atoms().size() == 1;
    const bool zero_norm = dh.central_lp_norm(1).value == Rat(0);
    if (affine_flat != dirac || dirac != zero_norm)
        throw InvariantViolation("almost-trivial criteria",
                                 std::string("affine=") + (affine_flat ? "1" : "0") + " dirac=" +
                                     (dirac ? "1" : "0") + " norm0=" + (zero_norm ? "1" : "0"));
    return affine_flat;
}

}  // namespace kstab

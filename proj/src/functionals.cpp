#include "kstab/functionals.hpp"

#include <algorithm>
#include <map>

#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"
#include "kstab/parallel.hpp"

namespace kstab {

namespace {

Rat factorial(int n) {
    Rat f = 1;
    for (int k = 2; k <= n; ++k) f *= Rat(k);
    return f;
}

bool is_zero_function(const PLFunction& f) {
    for (const auto& p : f.pieces()) {
        if (!p.c.is_zero()) return false;
        for (const auto& x : p.a)
            if (!x.is_zero()) return false;
    }
    return true;
}

// Q(f + C) = {(x, s) : x in P, 0 <= s <= f(x) + C} with C = -min f.
LatticePolytope truncated_epigraph(const MetricSlot& s, Rat& shift) {
    if (is_zero_function(s.f)) {
        shift = 0;
        return s.P.lifted(Rat(0));
    }
    const auto verts = subdivision_vertices(s.P, s.f);
    Rat lo = s.f(verts.front());
    for (const auto& v : verts) lo = min(lo, s.f(v));
    shift = -lo;
    std::vector<Vec> pts;
    for (const auto& v : s.P.vertices()) {
        Vec p = v;
        p.push_back(Rat(0));
        pts.push_back(std::move(p));
    }
    for (const auto& v : verts) {
        Vec p = v;
        p.push_back(s.f(v) + shift);
        pts.push_back(std::move(p));
    }
    return LatticePolytope::from_points(std::move(pts));
}

}  // namespace

Rat degree(const LatticePolytope& P) { return factorial(P.dim()) * P.volume(); }

Rat intersection_number(const std::vector<MetricSlot>& slots) {
    if (slots.empty()) throw InputError("intersection number of no metrics");
    const int n = slots.front().P.dim();
    if (static_cast<int>(slots.size()) != n + 1)
        throw InputError("intersection number needs n+1 = " + std::to_string(n + 1) + " metrics");
    std::vector<LatticePolytope> bodies;
    std::vector<Rat> shifts(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].P.dim() != n) throw InputError("intersection number: polytope dimension mismatch");
        bodies.push_back(truncated_epigraph(slots[i], shifts[i]));
    }
    Rat total = factorial(n + 1) * mixed_volume(bodies);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (shifts[i].is_zero()) continue;
        std::vector<LatticePolytope> rest;
        for (std::size_t j = 0; j < slots.size(); ++j)
            if (j != i) rest.push_back(slots[j].P);
        total -= shifts[i] * factorial(n) * mixed_volume(rest);
    }
    return total;
}

std::optional<LatticePolytope> nef_polytope(const LatticePolytope& P, const std::vector<Rat>& d) {
    const auto& facets = P.facets();
    if (d.size() != facets.size()) throw InputError("divisor needs one coefficient per ray");
    std::vector<Vec> corners;
    for (const auto& v : P.vertices()) {
        auto fs = P.facets_through(v);
        if (static_cast<int>(fs.size()) != P.dim()) throw InputError("nef test needs a simplicial fan");
        linalg::Mat m;
        Vec rhs;
        for (auto f : fs) {
            m.push_back(facets[f].normal);
            rhs.push_back(-d[f]);
        }
        auto x = linalg::solve(std::move(m), std::move(rhs));
        if (!x) throw InvariantViolation("fan cone", "rays of a vertex cone are dependent");
        for (std::size_t r = 0; r < facets.size(); ++r)
            if (dot(facets[r].normal, *x) < -d[r]) return std::nullopt;
        corners.push_back(std::move(*x));
    }
    return LatticePolytope::from_points(std::move(corners));
}

Rat intersection_with_class(const LatticePolytope& P, const std::vector<Rat>& d,
                            const std::vector<MetricSlot>& others) {
    const auto& facets = P.facets();
    Rat scale;
    for (std::size_t r = 0; r < facets.size(); ++r) scale += abs(d[r]) + abs(facets[r].offset);
    const std::int64_t cap = 2 * to_int64(scale.ceil()) + 2;
    for (std::int64_t N = 0; N <= cap; ++N) {
        std::vector<Rat> dn = d;
        for (std::size_t r = 0; r < facets.size(); ++r) dn[r] -= Rat(static_cast<long>(N)) * facets[r].offset;
        auto Pn = nef_polytope(P, dn);
        if (!Pn) continue;
        std::vector<MetricSlot> slots{MetricSlot::trivial(*Pn)};
        slots.insert(slots.end(), others.begin(), others.end());
        Rat total = intersection_number(slots);
        if (N > 0) {
            slots.front() = MetricSlot::trivial(P);
            total -= Rat(static_cast<long>(N)) * intersection_number(slots);
        }
        return total;
    }
    throw InputError("no nef decomposition D + N L found for N <= " + std::to_string(cap));
}

std::vector<Rat> log_canonical_class(const ToricPair& pair) {
    std::vector<Rat> d;
    for (const auto& b : pair.coeffs()) d.push_back(b - Rat(1));
    return d;
}

EnergyRoutes energy_routes(const ToricMetric& phi) {
    const auto& P = phi.polytope();
    EnergyRoutes r;
    r.barycenter = phi.dh_exact().barycenter();
    Rat integral;
    for (const auto& c : linearity_domains(P, phi.f())) integral += c.cell.integrate_affine(c.piece.a, c.piece.c);
    r.integral = integral / P.volume();
    std::vector<MetricSlot> slots(static_cast<std::size_t>(P.dim()) + 1, MetricSlot::of(phi));
    r.intersection = intersection_number(slots) / (Rat(P.dim() + 1) * degree(P));
    return r;
}

Rat energy(const ToricMetric& phi) {
    auto r = energy_routes(phi);
    if (r.barycenter != r.integral || r.integral != r.intersection)
        throw InvariantViolation("three-route energy", "barycenter " + r.barycenter.str() + ", integral " +
                                                           r.integral.str() + ", intersection " +
                                                           r.intersection.str());
    return r.barycenter;
}

IJNorms i_j_norms(const ToricMetric& phi) {
    const auto& P = phi.polytope();
    const int n = P.dim();
    const Rat E = energy(phi);
    const Rat V = degree(P);
    IJNorms out;
    out.J = phi.lambda_max() - E;
    std::vector<MetricSlot> all(static_cast<std::size_t>(n) + 1, MetricSlot::of(phi));
    std::vector<MetricSlot> mixed = all;
    mixed.front() = MetricSlot::trivial(P);
    out.I = phi.lambda_max() - (intersection_number(all) - intersection_number(mixed)) / V;
    const PPMeasure dh = phi.dh_exact();
    out.l1 = *dh.central_lp_norm(1).value;
    out.l2_squared = dh.central_lp_norm(2).power;
    out.linf = *dh.central_lp_norm(0).value;
    return out;
}

DFFit df_weight_fit(const ToricMetric& phi) {
    const int n = phi.dim();
    const std::int64_t step = phi.N0();
    std::map<std::int64_t, Rat> ws, ns;
    for (std::int64_t k = 1; k <= n + 5; ++k) {
        const std::int64_t m = step * k;
        GradedWeights gw = phi.filtration_of(m);
        ws[m] = gw.w();
        ns[m] = Rat(static_cast<long>(gw.N()));
    }
    EventualFit fw = fit_eventual_polynomial(ws, n + 1, step);
    EventualFit fn = fit_eventual_polynomial(ns, n, step);
    DFFit out;
    out.w = fw.poly;
    out.N = fn.poly;
    out.stable_from = std::max(fw.stable_from, fn.stable_from);
    const Rat Bn = fn.poly.coeff(n);
    out.F0 = fw.poly.coeff(n + 1) / Bn;
    out.F1 = (fw.poly.coeff(n) - out.F0 * fn.poly.coeff(n - 1)) / Bn;
    out.DF = Rat(-2) * out.F1;
    const Rat E = energy(phi);
    if (out.F0 != E)
        throw InvariantViolation("F0 = E", "F0 = " + out.F0.str() + " but E = " + E.str());
    return out;
}

Rat facet_integral(const ToricMetric& phi, std::size_t facet) {
    const auto& P = phi.polytope();
    const Facet& F = P.facets().at(facet);
    Rat total;
    for (const auto& c : linearity_domains(P, phi.f()))
        total += face_lattice_integral(c.cell, F, c.piece.a, c.piece.c);
    return total;
}

FacetFit facet_weight_fit(const ToricMetric& phi, std::size_t facet) {
    const auto& P = phi.polytope();
    const int n = P.dim();
    const Facet& F = P.facets().at(facet);
    std::vector<std::int64_t> u;
    for (const auto& x : F.normal) u.push_back(x.to_int64());
    const std::int64_t step = phi.N0();
    std::map<std::int64_t, Rat> ws, ns;
    for (std::int64_t k = 1; k <= n + 4; ++k) {
        const std::int64_t m = step * k;
        const Rat target = F.offset * Rat(static_cast<long>(m));
        mpz_class w = 0;
        std::int64_t count = 0;
        for_each_lattice_point(P, m, [&](const LatticePoint& x) {
            Rat s;
            for (std::size_t i = 0; i < x.size(); ++i) s += Rat(static_cast<long>(u[i] * x[i]));
            if (s != target) return;
            w += static_cast<long>(phi.weight(x, m));
            ++count;
        });
        ws[m] = Rat(w);
        ns[m] = Rat(static_cast<long>(count));
    }
    FacetFit out;
    out.w = fit_eventual_polynomial(ws, n, step).poly;
    out.N = fit_eventual_polynomial(ns, n - 1, step).poly;
    out.integral = out.w.coeff(n);
    out.volume = out.N.coeff(n - 1);
    return out;
}

Rat boundary_df_term(const ToricMetric& phi, const ToricPair& pair) {
    const auto& P = phi.polytope();
    Rat total;
    Rat E;
    bool have_E = false;
    for (std::size_t r = 0; r < pair.num_rays(); ++r) {
        if (pair.coeff(r).is_zero()) continue;
        if (!have_E) {
            E = energy(phi);
            have_E = true;
        }
        FacetFit fit = facet_weight_fit(phi, r);
        const Rat exact = facet_integral(phi, r);
        const Rat vol = facet_lattice_volume(P, P.facets()[r]);
        if (fit.integral != exact || fit.volume != vol)
            throw InvariantViolation("facet integral", "weights give " + fit.integral.str() + " over volume " +
                                                           fit.volume.str() + ", exact " + exact.str() +
                                                           " over " + vol.str());
        total += pair.coeff(r) * (exact - vol * E);
    }
    return total / P.volume();
}

Rat log_df(const ToricMetric& phi, const ToricPair& pair) {
    return df_weight_fit(phi).DF + boundary_df_term(phi, pair);
}

Rat sbar(const ToricPair& pair) {
    const auto& P = pair.polytope();
    Rat s;
    for (std::size_t r = 0; r < pair.num_rays(); ++r)
        s += (Rat(1) - pair.coeff(r)) * facet_lattice_volume(P, P.facets()[r]);
    return s / P.volume();
}

Rat entropy(const ToricMetric& phi, const ToricPair& pair) {
    Rat H;
    for (const auto& c : phi.components(pair)) H += c.A * c.mass;
    return H;
}

Rat ricci_energy(const ToricMetric& phi, const ToricPair& pair) {
    const auto& P = phi.polytope();
    std::vector<MetricSlot> others(static_cast<std::size_t>(P.dim()), MetricSlot::of(phi));
    return intersection_with_class(P, log_canonical_class(pair), others) / degree(P);
}

Rat mabuchi(const ToricMetric& phi, const ToricPair& pair) {
    return entropy(phi, pair) + ricci_energy(phi, pair) + sbar(pair) * energy(phi);
}

Rat error_term(const ToricMetric& phi, const ToricPair& pair) {
    Rat e = log_df(phi, pair) - mabuchi(phi, pair);
    if (e.sign() < 0) throw InvariantViolation("M <= DF", "DF - M = " + e.str());
    return e;
}

Rat reduced_defect(const ToricMetric& phi, const ToricPair& pair) {
    Rat s;
    for (const auto& c : phi.components(pair))
        s += (Rat(1) - Rat(1) / Rat(static_cast<long>(c.b))) * c.mass;
    return s;
}

Ding ding(const ToricMetric& phi, const ToricPair& pair) {
    if (!pair.anticanonical_shift())
        throw InputError("Ding functional needs L = -K_(X,B) up to translation");
    auto comps = phi.components(pair, true);
    Rat L = comps.front().A + comps.front().phi_value;
    for (const auto& c : comps) L = min(L, c.A + c.phi_value);
    return {L, L - energy(phi)};
}

FunctionalReport compute_report(const ToricMetric& phi, const ToricPair& pair) {
    FunctionalReport r;
    const auto& P = phi.polytope();
    r.N0 = phi.N0();
    r.V = degree(P);
    r.Sbar = sbar(pair);
    r.lambda_max = phi.lambda_max();
    r.lambda_min = phi.lambda_min();
    r.E = energy(phi);
    IJNorms ij = i_j_norms(phi);
    r.I = ij.I;
    r.J = ij.J;
    r.l1 = ij.l1;
    r.l2_squared = ij.l2_squared;
    r.linf = ij.linf;
    DFFit fit = df_weight_fit(phi);
    r.F0 = fit.F0;
    r.F1 = fit.F1;
    r.DF_boundary = boundary_df_term(phi, pair);
    r.DF = fit.DF + r.DF_boundary;
    r.H = entropy(phi, pair);
    r.R = ricci_energy(phi, pair);
    r.M = r.H + r.R + r.Sbar * r.E;
    r.error_term = r.DF - r.M;
    if (r.error_term.sign() < 0) throw InvariantViolation("M <= DF", "DF - M = " + r.error_term.str());
    if (pair.anticanonical_shift()) {
        Ding d = ding(phi, pair);
        r.ding_L = d.L;
        r.ding_D = d.D;
    }
    return r;
}

std::optional<ToricMetric> find_destabilizer(const ToricPair& pair) {
    if (classify_pair(pair) == PairClass::klt) return std::nullopt;
    const auto& P = pair.polytope();
    std::size_t best = 0;
    for (std::size_t r = 1; r < pair.num_rays(); ++r)
        if (pair.coeff(r) > pair.coeff(best)) best = r;
    const Facet& F = P.facets()[best];
    // l = <u, x> - h vanishes on the facet; cut halfway into P.
    const Rat eps = (P.max_of(F.normal) - F.offset) / Rat(2);
    const Vec zero(static_cast<std::size_t>(P.dim()));
    return ToricMetric(P, PLFunction({AffinePiece{zero, Rat(0)}, AffinePiece{F.normal, -F.offset - eps}}));
}

LeadingTerm leading_term(const std::vector<std::pair<Rat, Rat>>& samples) {
    if (samples.size() < 2) throw InputError("leading_term needs at least two samples");
    LeadingTerm out;
    std::vector<std::pair<Rat, Rat>> head(samples.begin(), samples.end() - 1);
    out.fit = interpolate(head);
    out.polynomial = out.fit(samples.back().first) == samples.back().second;
    if (out.fit.is_zero()) {
        out.identically_zero = true;
        return out;
    }
    for (int k = 0; k <= out.fit.degree(); ++k) {
        if (!out.fit.coeff(k).is_zero()) {
            out.exponent = k;
            out.coefficient = out.fit.coeff(k);
            break;
        }
    }
    return out;
}

EpsilonFamily epsilon_family_asymptotics(const LatticePolytope& P, const ToricPair& pair,
                                         const Vec& vertex, const std::vector<Rat>& grid) {
    if (grid.size() < 4) throw InputError("epsilon family needs at least 4 grid values");
    EpsilonFamily out;
    out.grid = grid;
    std::vector<std::pair<Rat, Rat>> M, H, J, I, l1, l2, DF, E, klog;
    const Rat V = degree(P);
    for (const auto& eps : grid) {
        auto phi = ToricMetric::deformation_to_normal_cone(P, vertex, eps);
        auto r = compute_report(phi, pair);
        M.emplace_back(eps, r.M);
        H.emplace_back(eps, r.H);
        J.emplace_back(eps, r.J);
        I.emplace_back(eps, r.I);
        l1.emplace_back(eps, r.l1);
        l2.emplace_back(eps, r.l2_squared);
        DF.emplace_back(eps, r.DF);
        E.emplace_back(eps, r.E);
        klog.emplace_back(eps, V * (r.M - r.Sbar * r.E));
        if (r.DF != r.M) out.df_matches_m = false;
        out.reports.push_back(std::move(r));
    }
    out.M = leading_term(M);
    out.H = leading_term(H);
    out.J = leading_term(J);
    out.I = leading_term(I);
    out.l1 = leading_term(l1);
    out.l2_squared = leading_term(l2);
    out.DF = leading_term(DF);
    out.E = leading_term(E);
    out.klog_coefficient = leading_term(klog).fit.coeff(P.dim());
    return out;
}

}  // namespace kstab

namespace kstab {

CoercivityScan coercivity_scan(const ToricPair& pair, const Rat& delta, std::size_t samples, std::uint64_t seed) {
    const auto& P = pair.polytope();
    const int n = P.dim();
    const Rat nn(n);
    const Rat cn = Rat(2) * nn.pow(static_cast<unsigned>(n)) / Rat(n + 1).pow(static_cast<unsigned>(n + 1));
    const bool lc = classify_pair(pair) != PairClass::not_lc;

    struct Sample {
        std::optional<FunctionalReport> report;
        std::vector<ScanViolation> bad, delta_bad;
    };
    auto results = parallel_map<Sample>(samples, [&](std::size_t i) {
        Rng rng(case_seed(seed, i));
        auto phi = random_metric(rng, P);
        Sample s;
        auto r = compute_report(phi, pair);
        auto fail = [&](std::vector<ScanViolation>& into, const std::string& what, const Rat& lhs, const Rat& rhs) {
            into.push_back({i, what, lhs.str() + " vs " + rhs.str()});
        };
        if (r.J / nn > r.I - r.J) fail(s.bad, "(1/n)J <= I-J", r.J / nn, r.I - r.J);
        if (r.I - r.J > nn * r.J) fail(s.bad, "I-J <= nJ", r.I - r.J, nn * r.J);
        if (cn * r.J > r.l1) fail(s.bad, "c_n J <= L1", cn * r.J, r.l1);
        if (r.l1 > Rat(2) * r.J) fail(s.bad, "L1 <= 2J", r.l1, Rat(2) * r.J);
        if (r.M > r.DF) fail(s.bad, "M <= DF", r.M, r.DF);
        if (lc && r.H.sign() < 0) fail(s.bad, "H >= 0 (lc)", r.H, Rat(0));
        if (r.ding_D && *r.ding_D > r.J) fail(s.bad, "D <= J", *r.ding_D, r.J);
        if (r.ding_D && *r.ding_D > r.M) fail(s.bad, "D <= M", *r.ding_D, r.M);
        if (!check_tail_root_concavity(phi.dh_exact(), n).holds)
            s.bad.push_back({i, "DH tail^(1/n) concave", "fails"});
        if (r.M < delta * r.J) fail(s.delta_bad, "M >= delta J", r.M, delta * r.J);
        if (r.H < delta * r.I) fail(s.delta_bad, "H >= delta I", r.H, delta * r.I);
        s.report = std::move(r);
        return s;
    });

    CoercivityScan out;
    out.delta = delta;
    out.samples = samples;
    auto lower = [](std::optional<Rat>& slot, const Rat& v) {
        if (!slot || v < *slot) slot = v;
    };
    for (auto& s : results) {
        out.violations.insert(out.violations.end(), s.bad.begin(), s.bad.end());
        out.delta_violations.insert(out.delta_violations.end(), s.delta_bad.begin(), s.delta_bad.end());
        const auto& r = *s.report;
        if (r.J.is_zero()) continue;
        ++out.nontrivial;
        lower(out.min_M_over_J, r.M / r.J);
        lower(out.min_H_over_I, r.H / r.I);
        lower(out.min_H_over_J, r.H / r.J);
        if (r.ding_D) lower(out.min_D_over_J, *r.ding_D / r.J);
    }
    return out;
}

}  // namespace kstab

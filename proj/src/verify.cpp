#include "kstab/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/functionals.hpp"
#include "kstab/io.hpp"
#include "kstab/parallel.hpp"

namespace kstab {

namespace {

class Checker {
public:
    explicit Checker(std::string name) : name_(std::move(name)) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) fails_.push_back(what);
    }
    void eq(const Rat& got, const Rat& want, const std::string& what) {
        if (got != want) fails_.push_back(what + ": got " + got.str() + ", want " + want.str());
    }
    template <class F>
    void guard(const std::string& what, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            fails_.push_back(what + ": " + e.what());
        }
    }
    CheckResult result(const std::string& summary) const {
        CheckResult r{name_, fails_.empty(), summary};
        if (!fails_.empty()) {
            r.detail = fails_.front();
            if (fails_.size() > 1) r.detail += " (+" + std::to_string(fails_.size() - 1) + " more)";
        }
        return r;
    }

private:
    std::string name_;
    std::vector<std::string> fails_;
};

using CaseFn = std::function<std::optional<std::string>(const RandomCase&)>;

CheckResult over_cases(const std::string& name, std::uint64_t seed, std::size_t cases, const CaseFn& fn,
                       const std::string& summary) {
    auto outcomes = parallel_map<std::optional<std::string>>(cases, [&](std::size_t i) -> std::optional<std::string> {
        RandomCase rc;
        try {
            rc = random_case(seed, i);
            auto msg = fn(rc);
            if (!msg) return std::nullopt;
            return *msg;
        } catch (const std::exception& e) {
            return std::string("exception: ") + e.what();
        }
    });
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i]) continue;
        RandomCase rc = random_case(seed, i);
        std::ostringstream os;
        os << "case " << i << " (seed " << rc.seed << ", " << rc.polytope_name << "): " << *outcomes[i]
           << "; metric=" << to_json(rc.phi).dump() << "; pair=" << to_json(rc.pair).dump();
        return {name, false, os.str()};
    }
    return {name, true, summary + " (" + std::to_string(cases) + " cases)"};
}

Rat cn(int n) {
    // 2 n^n / (n+1)^(n+1)
    return Rat(2) * Rat(n).pow(static_cast<unsigned>(n)) / Rat(n + 1).pow(static_cast<unsigned>(n + 1));
}

Vec V1(long x) { return {Rat(x)}; }

PPMeasure flagship_measure() {
    return PPMeasure({{Rat(0), Rat(1, 2)}}, {{Rat(-1, 2), Rat(0), UniPoly::constant(Rat(1))}});
}

ToricMetric flagship() { return ToricMetric::deformation_to_normal_cone(segment(0, 1), V1(0), Rat(1, 2)); }

std::string show(const Rat& r) { return r.str(); }

}  // namespace

// ---------------------------------------------------------------- examples

CheckResult check_exactnum_examples() {
    Checker c("exactnum examples");
    c.guard("interpolate", [&] {
        c.expect(interpolate({{0, 1}, {1, 2}, {2, 3}}) == UniPoly({1, 1}), "collinear points give m+1");
        c.expect(interpolate({{2, 5}, {4, 9}, {6, 13}}) == UniPoly({1, 2}), "segment [0,2] counts give 2m+1");
        c.expect(interpolate({{1, 1}, {2, 4}, {3, 9}}) == UniPoly({0, 0, 1}), "squares give m^2");
        bool threw = false;
        try {
            interpolate({{1, 1}, {1, 2}});
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "duplicate abscissae must be rejected");
    });
    c.guard("fit_eventual_polynomial", [&] {
        std::map<std::int64_t, Rat> s;
        for (std::int64_t m = 1; m <= 6; ++m) s[m] = Rat(m + 1);
        auto fit = fit_eventual_polynomial(s, 1, 1);
        c.expect(fit.poly == UniPoly({1, 1}) && fit.stable_from == 1, "N_m of [0,1] is m+1 from m=1");
        std::map<std::int64_t, Rat> w;
        for (std::int64_t m = 2; m <= 12; m += 2) w[m] = Rat(-(m * m + 2 * m), 8);
        c.expect(fit_eventual_polynomial(w, 2, 2).poly == UniPoly({0, Rat(-1, 4), Rat(-1, 8)}),
                 "flagship w_m fits -m^2/8 - m/4");
        auto phi = flagship();
        std::map<std::int64_t, Rat> direct;
        for (std::int64_t m = 2; m <= 12; m += 2) direct[m] = phi.filtration_of(m).w();
        c.expect(fit_eventual_polynomial(direct, 2, 2).poly == UniPoly({0, Rat(-1, 4), Rat(-1, 8)}),
                 "flagship weights from lattice points fit -m^2/8 - m/4");
        for (long d = 1; d <= 3; ++d) {
            std::map<std::int64_t, Rat> ws;
            auto ps = ToricMetric::from_one_ps(segment(0, 1), V1(d), 0);
            for (std::int64_t m = 1; m <= 6; ++m) ws[m] = ps.filtration_of(m).w();
            auto f = fit_eventual_polynomial(ws, 2, 1);
            c.expect(f.poly == UniPoly({0, Rat(d, 2), Rat(d, 2)}) && f.stable_from == 1,
                     "1-PS w_m = d m(m+1)/2 for d=" + std::to_string(d));
        }
        // Quasi-polynomial input is rejected.
        std::map<std::int64_t, Rat> q;
        for (std::int64_t m = 1; m <= 8; ++m) q[m] = Rat(m * m - (m % 2), 4);
        bool threw = false;
        try {
            fit_eventual_polynomial(q, 2, 1);
        } catch (const NotEventuallyPolynomial&) {
            threw = true;
        }
        c.expect(threw, "quasi-polynomial min(x,1-x) weights must fail on step 1");
    });
    return c.result("interpolation and eventual fits");
}

CheckResult check_measure_examples() {
    Checker c("measures examples");
    c.guard("moments", [&] {
        auto u = PPMeasure::uniform(0, 2);
        c.eq(u.moment(1), 1, "Unif[0,2] mean");
        c.eq(PPMeasure::dirac(Rat(3, 2)).moment(3), Rat(27, 8), "Dirac moment");
        c.eq(flagship_measure().moment(1), Rat(-1, 8), "flagship mean");
    });
    c.guard("norms", [&] {
        c.eq(*PPMeasure::uniform(0, 2).central_lp_norm(1).value, Rat(1, 2), "Unif[0,2] L1");
        c.eq(*flagship_measure().central_lp_norm(1).value, Rat(9, 64), "flagship L1");
        for (int p : {0, 1, 2, 3}) c.eq(PPMeasure::dirac(5).central_lp_norm(p).power, 0, "Dirac norm");
        bool threw = false;
        try {
            PPMeasure::dirac(0, 2).central_lp_norm(1);
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "norm of a non-probability measure must fail");
    });
    c.guard("pushforward", [&] {
        c.expect(PPMeasure::uniform(0, 3).pushforward_affine(1, 2) == PPMeasure::uniform(2, 5), "shift of Unif");
        c.expect(PPMeasure::uniform(0, 1).pushforward_affine(2, 0) == PPMeasure::uniform(0, 2), "scale of Unif");
        PPMeasure want({{Rat(1, 2), Rat(1, 2)}}, {{Rat(0), Rat(1, 2), UniPoly::constant(1)}});
        c.expect(flagship_measure().pushforward_affine(1, Rat(1, 2)) == want, "flagship shifted by 1/2");
        bool threw = false;
        try {
            PPMeasure::uniform(0, 1).pushforward_affine(0, 1);
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "alpha = 0 must fail");
    });
    c.guard("tails", [&] {
        c.eq(PPMeasure::uniform(0, 2).cdf_tail(1), Rat(1, 2), "Unif[0,2] tail at 1");
        c.eq(flagship_measure().cdf_tail(0), Rat(1, 2), "flagship tail at 0");
        c.eq(flagship_measure().cdf_tail(Rat(-1, 4)), Rat(3, 4), "flagship tail at -1/4");
    });
    return c.result("moments, norms, pushforwards, tails");
}

CheckResult check_convex_examples() {
    Checker c("convex examples");
    c.guard("lattice points", [&] {
        c.expect(count_lattice_points(segment(0, 1), 3) == 4, "[0,1] at m=3");
        c.expect(count_lattice_points(simplex(2), 2) == 6, "unit triangle at m=2");
        c.expect(count_lattice_points(segment(0, 2), 5) == 11, "[0,2] at m=5");
    });
    c.guard("volumes", [&] {
        c.eq(unit_square().volume(), 1, "unit square");
        c.eq(simplex(2).volume(), Rat(1, 2), "unit triangle");
        for (long d = 1; d <= 3; ++d) {
            auto tri = LatticePolytope::from_points({{0, 0}, {1, 0}, {1, d}});
            auto seg = LatticePolytope::from_points({{0, 0}, {1, 0}});
            c.eq(tri.volume(), Rat(d, 2), "triangle volume");
            c.eq(mixed_volume({tri, tri}), Rat(d, 2), "MV(K,K) = vol K");
            c.eq(mixed_volume({tri, seg}), Rat(d, 2), "MV(triangle, segment)");
            c.eq(mixed_volume({seg, seg}), 0, "MV of segments on one line");
            c.eq(mixed_volume({LatticePolytope::from_points({{1, 1}}), seg}), 0, "MV with a point");
        }
    });
    c.guard("linearity domains", [&] {
        PLFunction f({{V1(0), 0}, {V1(1), Rat(-1, 2)}});
        auto cells = linearity_domains(segment(0, 1), f);
        c.expect(cells.size() == 2, "two cells for min(0, x-1/2)");
        for (const auto& cell : cells) {
            if (cell.piece.a == V1(1)) c.expect(cell.cell == segment(0, Rat(1, 2)), "cell of x - 1/2");
            else c.expect(cell.cell == segment(Rat(1, 2), 1), "cell of 0");
        }
        c.expect(linearity_domains(unit_square(), PLFunction({{{1, 2}, 3}})).size() == 1, "affine f has one cell");
        PLFunction g({{{0, 0}, 0}, {{1, 1}, Rat(-1, 3)}});
        auto cg = linearity_domains(simplex(2), g);
        c.expect(cg.size() == 2, "two cells on the triangle");
        for (const auto& cell : cg) {
            if (cell.piece.a == Vec{1, 1})
                c.expect(cell.cell == LatticePolytope::from_points({{0, 0}, {Rat(1, 3), 0}, {0, Rat(1, 3)}}),
                         "small simplex cell");
            else c.expect(cell.cell.vertices().size() == 4, "complementary quadrilateral");
        }
    });
    c.guard("superlevel volumes", [&] {
        for (long d = 1; d <= 3; ++d) {
            SuperlevelVolume s(segment(0, 1), PLFunction({{V1(d), 0}}));
            c.expect(s.polys().size() == 1 && s.polys()[0] == UniPoly::affine(Rat(-1, d), 1), "1 - lambda/d");
        }
        for (Rat eps : {Rat(1, 2), Rat(1, 3)}) {
            SuperlevelVolume s(simplex(2), PLFunction({{{0, 0}, 0}, {{1, 1}, -eps}}));
            UniPoly want = Rat(-1, 2) * UniPoly::affine(1, eps).pow(2) + UniPoly::constant(Rat(1, 2));
            c.expect(s.polys().size() == 1 && s.polys()[0] == want, "1/2 - (lambda+eps)^2/2");
        }
        SuperlevelVolume k(unit_square(), PLFunction::constant(2, 3));
        c.eq(k(2), 1, "constant f below");
        c.eq(k(3), 1, "constant f at value");
        c.eq(k(Rat(7, 2)), 0, "constant f above");
    });
    c.guard("facet lattice volumes", [&] {
        auto s2 = segment(0, 2);
        for (const auto& f : s2.facets()) c.eq(facet_lattice_volume(s2, f), 1, "endpoint");
        for (const auto& f : unit_square().facets()) c.eq(facet_lattice_volume(unit_square(), f), 1, "square edge");
        for (const auto& f : simplex(2).facets()) c.eq(facet_lattice_volume(simplex(2), f), 1, "triangle edge");
        bool threw = false;
        try {
            facet_lattice_volume(simplex(2), Facet{{1, 1}, 0});
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "non-facet must be rejected");
    });
    return c.result("lattice points, volumes, mixed volumes, subdivisions, superlevel sets");
}

CheckResult check_filtration_examples() {
    Checker c("filtration examples");
    c.guard("graded weights", [&] {
        auto gw = flagship().filtration_of(2);
        c.expect(gw == GradedWeights(2, {{-1, 1}, {0, 2}}), "flagship filtration at m=2");
        auto sm = successive_minima(gw);
        c.expect(sm == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 2}, {-1, 1}}, "successive minima");
        c.expect(scaled_weight_measure(gw) == PPMeasure({{Rat(-1, 2), Rat(1, 3)}, {0, Rat(2, 3)}}, {}),
                 "flagship weight measure");
        auto ps = ToricMetric::from_one_ps(segment(0, 1), V1(2), 0);
        c.expect(scaled_weight_measure(ps.filtration_of(1)) == PPMeasure({{0, Rat(1, 2)}, {2, Rat(1, 2)}}, {}),
                 "1-PS d=2 at m=1");
        c.expect(scaled_weight_measure(GradedWeights(3, {{5, 4}})) == PPMeasure::dirac(Rat(5, 3)), "constant weights");
        for (long d = 1; d <= 3; ++d) {
            auto g = ToricMetric::from_one_ps(segment(0, 1), V1(d), 0).filtration_of(4);
            std::vector<std::pair<std::int64_t, std::int64_t>> want;
            for (long u = 0; u <= 4; ++u) want.emplace_back(d * u, 1);
            c.expect(g.entries() == want, "1-PS weights d*u");
        }
    });
    c.guard("gauss extension", [&] {
        MonomialValuation v{{Rat(1, 2), Rat(1)}};
        c.eq(gauss_extension_eval(v, {{{0, 0}, 1}}), 1, "G(v)(t)");
        MonomialValuation triv{{0, 0}};
        c.eq(gauss_extension_eval(triv, {{{3, 1}, 2}, {{0, 0}, -1}}), -1, "trivial v gives the t-adic order");
        c.eq(gauss_extension_eval(v, {{{1, 1}, -1}}), Rat(1, 2), "val_(1,2)/2 on xy/t");
    });
    c.guard("rees valuations", [&] {
        auto r1 = rees_valuations(MonomialIdeal::parse("x^2,y"));
        c.expect(r1.size() == 1 && r1[0].w == Vec{Rat(1, 2), 1}, "(x^2,y)");
        auto r2 = rees_valuations(MonomialIdeal::parse("x^3", 2));
        c.expect(r2.size() == 1 && r2[0].w == Vec{Rat(1, 3), 0}, "(x^3) gives ord_x / 3");
        auto r3 = rees_valuations(MonomialIdeal::parse("x,y"));
        c.expect(r3.size() == 1 && r3[0].w == Vec{1, 1}, "maximal ideal");
        auto a = MonomialIdeal::parse("x^2,y");
        c.expect(in_integral_closure({1, 1}, a, 1), "xy in closure of (x^2,y)");
        c.expect(power_membership({1, 1}, a, 1, 2), "(xy)^2 in (x^2,y)^2");
        c.expect(!in_integral_closure({1, 0}, a, 1), "x not in closure");
        for (const auto& g : a.generators()) c.expect(in_integral_closure(g, a, 1), "generator in closure");
        auto d1 = rees_of_deformation(MonomialIdeal::parse("x,y"));
        c.expect(d1.size() == 2 && d1[1].ord.w == Vec{1, 1, 1} && d1[1].b == 1 && d1[1].restricted.w == Vec{1, 1},
                 "deformation of (x,y)");
        auto d2 = rees_of_deformation(a);
        c.expect(d2.size() == 2 && d2[0].restricted.is_trivial() && d2[1].restricted.w == Vec{Rat(1, 2), 1},
                 "deformation of (x^2,y)");
        auto d3 = rees_of_deformation(MonomialIdeal::parse("1", 2));
        c.expect(d3.size() == 1 && d3[0].restricted.is_trivial(), "unit ideal");
    });
    return c.result("weights, minima, Gauss extension, Rees valuations");
}

CheckResult check_testconfig_examples() {
    Checker c("testconfig examples");
    const auto I = segment(0, 1);
    c.guard("constructors", [&] {
        for (long d = 1; d <= 3; ++d)
            c.expect(ToricMetric::from_one_ps(I, V1(d), 0).dh_exact() == PPMeasure::uniform(0, d), "1-PS DH");
        c.expect(ToricMetric::from_one_ps(I, V1(0), 0) == ToricMetric::trivial(I), "a=0,c=0 is trivial");
        c.expect(ToricMetric::from_one_ps(I, V1(0), 3) == ToricMetric::trivial(I, 3), "a=0,c=3 is a twist");
        c.expect(flagship().f() == PLFunction({{V1(0), 0}, {V1(1), Rat(-1, 2)}}), "flagship pieces");
        auto p2 = ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, Rat(1, 3));
        c.expect(p2.f() == PLFunction({{{0, 0}, 0}, {{1, 1}, Rat(-1, 3)}}), "P^2 family pieces");
        bool threw = false;
        try {
            ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, 1);
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "eps = 1 must fail on the triangle");
        c.expect(ToricMetric::trivial(I).translate(1).dh_exact() == PPMeasure::dirac(1), "translate trivial");
        c.expect(flagship().scale_base_change(2).dh_exact() == flagship().dh_exact().pushforward_affine(2, 0),
                 "base change of the flagship");
        auto half = ToricMetric::from_one_ps(I, {Rat(1, 2)}, 0);
        ToricPair pair(I, {});
        c.expect(half.components(pair)[0].b == 2 && half.scale_base_change(2).components(pair)[0].b == 1,
                 "b drops from 2 to 1");
    });
    c.guard("filtrations", [&] {
        c.expect(ToricMetric::trivial(I).filtration_of(5) == GradedWeights(5, {{0, 6}}), "trivial weights");
    });
    c.guard("components", [&] {
        ToricPair pair(I, {});
        auto comps = flagship().components(pair);
        c.expect(comps.size() == 2, "flagship has two components");
        for (const auto& e : comps) {
            if (e.trivial()) {
                c.eq(e.A, 0, "trivial A");
                c.eq(e.mass, Rat(1, 2), "trivial mass");
                c.eq(e.phi_value, 0, "trivial phi");
            } else {
                c.expect(e.b == 1, "b = 1");
                c.eq(e.A, 1, "A at the fixed point");
                c.eq(e.mass, Rat(1, 2), "mass");
                c.eq(e.phi_value, Rat(-1, 2), "phi value");
            }
        }
        for (long d = 1; d <= 3; ++d) {
            auto ps = ToricMetric::from_one_ps(I, V1(d), 0).components(pair);
            c.expect(ps.size() == 1, "1-PS single component");
            c.eq(ps[0].A, d, "1-PS A");
            c.eq(ps[0].mass, 1, "1-PS mass");
            c.eq(ps[0].phi_value, 0, "1-PS phi value");
        }
        auto t = ToricMetric::trivial(I).components(pair);
        c.expect(t.size() == 1 && t[0].trivial() && t[0].mass == Rat(1), "trivial metric");
    });
    c.guard("dh and triviality", [&] {
        c.expect(flagship().dh_exact() == flagship_measure(), "flagship DH");
        c.expect(ToricMetric::trivial(I, 2).dh_exact() == PPMeasure::dirac(2), "twisted trivial DH");
        c.expect(ToricMetric::trivial(I, 3).is_almost_trivial(), "trivial + 3");
        c.expect(!flagship().is_almost_trivial(), "flagship is not trivial");
        c.expect(!ToricMetric::from_one_ps(I, V1(2), 0).is_almost_trivial(), "1-PS is not trivial");
    });
    return c.result("constructors, filtrations, components, DH");
}

CheckResult check_functional_examples() {
    Checker c("functionals examples");
    const auto I = segment(0, 1);
    const ToricPair pair(I, {});
    c.guard("intersection numbers", [&] {
        for (auto P : {I, simplex(2)}) {
            std::vector<MetricSlot> s(static_cast<std::size_t>(P.dim()) + 1, MetricSlot::trivial(P));
            c.eq(intersection_number(s), 0, "trivial^(n+1)");
        }
        for (long d = 1; d <= 3; ++d) {
            auto phi = MetricSlot::of(ToricMetric::from_one_ps(I, V1(d), 0));
            c.eq(intersection_number({phi, phi}), d, "(phi^2) of the 1-PS");
            c.eq(intersection_number({phi, MetricSlot::trivial(I)}), d, "(phi . phi_triv)");
        }
    });
    c.guard("energy and norms", [&] {
        c.eq(energy(flagship()), Rat(-1, 8), "flagship E");
        c.eq(energy(ToricMetric::trivial(I, Rat(5, 3))), Rat(5, 3), "E(triv + c)");
        for (long d = 1; d <= 3; ++d) {
            auto phi = ToricMetric::from_one_ps(I, V1(d), 0);
            c.eq(energy(phi), Rat(d, 2), "1-PS E");
            auto ij = i_j_norms(phi);
            c.eq(ij.J, Rat(d, 2), "1-PS J");
            c.eq(ij.I, d, "1-PS I");
            c.eq(ij.l1, Rat(d, 4), "1-PS L1");
            c.eq(cn(1) * ij.J, ij.l1, "c_1 J = L1 for the 1-PS");
        }
        auto ij = i_j_norms(flagship());
        c.eq(ij.J, Rat(1, 8), "flagship J");
        c.eq(ij.I, Rat(1, 4), "flagship I");
        c.eq(ij.l1, Rat(9, 64), "flagship L1");
        auto z = i_j_norms(ToricMetric::trivial(I, 4));
        c.expect(z.I.is_zero() && z.J.is_zero() && z.l1.is_zero() && z.l2_squared.is_zero() && z.linf.is_zero(),
                 "trivial + c has zero norms");
    });
    c.guard("DF fits", [&] {
        auto f = df_weight_fit(flagship());
        c.eq(f.F0, Rat(-1, 8), "flagship F0");
        c.eq(f.F1, Rat(-1, 8), "flagship F1");
        c.eq(f.DF, Rat(1, 4), "flagship DF");
        for (long d = 1; d <= 3; ++d) {
            auto g = df_weight_fit(ToricMetric::from_one_ps(I, V1(d), 0));
            c.eq(g.F0, Rat(d, 2), "1-PS F0");
            c.eq(g.F1, 0, "1-PS F1");
        }
        c.eq(df_weight_fit(ToricMetric::trivial(I, 2)).DF, 0, "trivial DF");
    });
    c.guard("log discrepancies", [&] {
        const ToricPair p2(simplex(2), {});
        for (std::size_t r = 0; r < p2.num_rays(); ++r) c.eq(toric_log_discrepancy(p2, p2.ray(r)), 1, "ray");
        c.eq(toric_log_discrepancy(p2, {1, 1}), 2, "blow-up of the fixed point");
        const ToricPair pb(simplex(2), {{{1, 0}, Rat(2, 3)}});
        c.eq(toric_log_discrepancy(pb, {1, 0}), Rat(1, 3), "ray with coefficient 2/3");
    });
    c.guard("entropy, Ricci energy, Mabuchi", [&] {
        c.eq(entropy(flagship(), pair), Rat(1, 2), "flagship H");
        c.eq(ricci_energy(flagship(), pair), 0, "flagship R");
        c.eq(sbar(pair), 2, "Sbar of P^1");
        c.eq(mabuchi(flagship(), pair), Rat(1, 4), "flagship M");
        c.eq(log_df(flagship(), pair), Rat(1, 4), "flagship DF");
        for (long d = 1; d <= 3; ++d) {
            auto phi = ToricMetric::from_one_ps(I, V1(d), 0);
            c.eq(entropy(phi, pair), d, "1-PS H");
            c.eq(ricci_energy(phi, pair), -2 * d, "1-PS R");
            c.eq(mabuchi(phi, pair), 0, "1-PS M");
            c.eq(log_df(phi, pair), 0, "1-PS DF");
        }
        for (Rat k : {Rat(1), Rat(-3, 2)})
            c.eq(ricci_energy(flagship().translate(k), pair), ricci_energy(flagship(), pair) - sbar(pair) * k,
                 "R(phi + c) = R - Sbar c");
    });
    c.guard("Ding", [&] {
        const auto P = segment(0, 2);
        const ToricPair fano(P, {});
        auto d1 = ding(ToricMetric(P, PLFunction({{V1(0), 0}, {V1(1), Rat(-1, 2)}})), fano);
        c.eq(d1.L, 0, "L^NA");
        c.eq(d1.D, Rat(1, 16), "D^NA");
        c.eq(i_j_norms(ToricMetric(P, PLFunction({{V1(0), 0}, {V1(1), Rat(-1, 2)}}))).J, Rat(1, 16), "J");
        for (long d = 1; d <= 3; ++d) {
            auto phi = ToricMetric::from_one_ps(P, V1(d), 0);
            auto dd = ding(phi, fano);
            c.eq(dd.L, d, "1-PS L^NA");
            c.eq(dd.D, 0, "1-PS D^NA");
            c.eq(mabuchi(phi, fano), 0, "1-PS M on [0,2]");
        }
        auto t = ding(ToricMetric::trivial(P), fano);
        c.expect(t.L.is_zero() && t.D.is_zero(), "trivial Ding");
        bool threw = false;
        try {
            ding(flagship(), pair);
        } catch (const InputError&) {
            threw = true;
        }
        c.expect(threw, "Ding on O(1) over P^1 must fail");
    });
    return c.result("intersections, E, I, J, DF, A, H, R, M, Ding");
}

// ---------------------------------------------------------------- criteria

CheckResult check_flagship() {
    Checker c("1 flagship exactness");
    std::string summary;
    c.guard("flagship", [&] {
        auto phi = flagship();
        const ToricPair pair(segment(0, 1), {});
        auto r = compute_report(phi, pair);
        auto routes = energy_routes(phi);
        c.eq(routes.barycenter, Rat(-1, 8), "E (barycenter)");
        c.eq(routes.integral, Rat(-1, 8), "E (integral of f)");
        c.eq(routes.intersection, Rat(-1, 8), "E (intersection)");
        c.eq(r.F0, Rat(-1, 8), "E (leading weight coefficient)");
        c.eq(r.DF, Rat(1, 4), "DF (weight fit)");
        c.eq(r.M, Rat(1, 4), "M (Chen-Tian)");
        c.eq(r.H, Rat(1, 2), "H");
        c.eq(r.R, 0, "R");
        c.eq(r.Sbar * r.E, Rat(-1, 4), "Sbar E");
        c.eq(r.lambda_max, 0, "lambda_max");
        c.eq(r.J, Rat(1, 8), "J = lambda_max - E");
        std::vector<MetricSlot> mix{MetricSlot::of(phi), MetricSlot::trivial(phi.polytope())};
        c.eq(intersection_number(mix) / r.V - r.E, Rat(1, 8), "J (intersection)");
        c.eq(r.I, Rat(1, 4), "I");
        c.eq(r.l1, Rat(9, 64), "L1 norm");
        summary = "DF = M = " + show(r.DF) + ", H = " + show(r.H) + ", R = " + show(r.R) + ", E = " + show(r.E) +
                  ", J = " + show(r.J) + ", I = " + show(r.I) + ", L1 = " + show(r.l1);
    });
    return c.result(summary);
}

CheckResult check_dh_formula() {
    Checker c("2 DH formula of the blow-up family");
    for (int n : {1, 2}) {
        for (Rat eps : {Rat(1, 2), Rat(1, 3), Rat(1, 5)}) {
            c.guard("n=" + std::to_string(n) + " eps=" + eps.str(), [&] {
                auto P = simplex(n);
                auto phi = ToricMetric::deformation_to_normal_cone(P, Vec(static_cast<std::size_t>(n)), eps);
                const Rat V = degree(P);
                UniPoly dens = (Rat(n) / V) * UniPoly::affine(1, eps).pow(static_cast<unsigned>(n - 1));
                PPMeasure want({{0, Rat(1) - eps.pow(static_cast<unsigned>(n)) / V}}, {{-eps, 0, dens}});
                c.expect(phi.dh_exact() == want, "n=" + std::to_string(n) + " eps=" + eps.str() + ": DH mismatch");
            });
        }
    }
    return c.result("n in {1,2}, eps in {1/2,1/3,1/5}: density n V^-1 (lambda+eps)^(n-1) on [-eps,0] plus atom 1 - eps^n/V");
}

CheckResult check_epsilon_exponents() {
    Checker c("3 eps-family exponents");
    std::ostringstream summary;
    std::vector<Rat> grid;
    for (long k = 3; k <= 16; ++k) grid.emplace_back(1, k);
    for (int n : {1, 2}) {
        c.guard("n=" + std::to_string(n), [&] {
            auto P = simplex(n);
            const ToricPair pair(P, {});
            auto fam = epsilon_family_asymptotics(P, pair, Vec(static_cast<std::size_t>(n)), grid);
            auto want = [&](const LeadingTerm& t, int e, const std::string& what) {
                c.expect(t.polynomial, what + " is not polynomial on the grid");
                c.expect(!t.identically_zero && t.exponent == e,
                         what + ": exponent " + std::to_string(t.exponent) + ", want " + std::to_string(e));
            };
            want(fam.J, n + 1, "J");
            want(fam.l1, n + 1, "L1");
            want(fam.l2_squared, n + 2, "L2^2");
            want(fam.M, n, "M");
            want(fam.H, n, "H");
            c.expect(fam.df_matches_m, "DF = M must hold on every grid point (reduced central fibre)");
            if (n == 1) {
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    c.eq(fam.reports[i].J, grid[i] * grid[i] / Rat(2), "P^1 J = eps^2/2");
                    c.eq(fam.reports[i].H, grid[i], "P^1 H = eps");
                }
            }
            const Rat klog = fam.klog_coefficient;
            c.eq(klog, Rat(n), "coefficient of eps^n in (K^log . L_eps^n)");
            summary << "n=" << n << ": J ~ " << fam.J.coefficient << " eps^" << fam.J.exponent << ", L1 ~ "
                    << fam.l1.coefficient << " eps^" << fam.l1.exponent << ", L2^2 ~ " << fam.l2_squared.coefficient
                    << " eps^" << fam.l2_squared.exponent << ", M ~ " << fam.M.coefficient << " eps^" << fam.M.exponent
                    << ", H ~ " << fam.H.coefficient << " eps^" << fam.H.exponent << "; (K^log.L^n) coefficient "
                    << klog << " (n+1 = " << n + 1 << " rejected, n = " << n << " confirmed: DF = M on all "
                    << grid.size() << " grid points). ";
        });
    }
    return c.result(summary.str());
}

CheckResult check_one_ps() {
    Checker c("4 one-parameter subgroup");
    const auto I = segment(0, 1);
    const ToricPair pair(I, {});
    for (long d = 1; d <= 3; ++d) {
        c.guard("d=" + std::to_string(d), [&] {
            auto phi = ToricMetric::from_one_ps(I, V1(d), 0);
            c.expect(phi.dh_exact() == PPMeasure::uniform(0, d), "DH = Unif[0," + std::to_string(d) + "]");
            auto r = compute_report(phi, pair);
            c.eq(r.DF, 0, "DF");
            c.eq(r.M, 0, "M");
        });
    }
    return c.result("d in {1,2,3}: DH = Unif[0,d], DF = M = 0");
}

CheckResult check_inequalities(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "5 inequality suite", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            auto r = compute_report(rc.phi, rc.pair);
            const int n = rc.phi.dim();
            const Rat nn(n);
            if (r.J / nn > r.I - r.J || r.I - r.J > nn * r.J) return "(1/n)J <= I-J <= nJ fails";
            if (cn(n) * r.J > r.l1 || r.l1 > Rat(2) * r.J) return "c_n J <= L1 <= 2J fails";
            if (r.M > r.DF) return "M <= DF fails";
            if (classify_pair(rc.pair) != PairClass::not_lc && r.H.sign() < 0) return "H >= 0 fails on an lc pair";
            if (rc.anticanonical) {
                if (!r.ding_D) return "anticanonical pair without Ding values";
                if (*r.ding_D > r.J) return "D <= J fails";
                if (*r.ding_D > r.M) return "D <= M fails";
            }
            return std::nullopt;
        },
        "(1/n)J <= I-J <= nJ, c_n J <= L1 <= 2J, M <= DF, H >= 0 (lc), D <= J and D <= M (anticanonical): 0 violations");
}

CheckResult check_coercivity_scan(std::uint64_t seed, std::size_t cases) {
    Checker c("coercivity scan");
    std::ostringstream summary;
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"segment:2", "trivial"}, {"simplex:2", "trivial"}, {"p2-anticanonical", "trivial"}, {"square", "line:1/2"}};
    for (const auto& [poly, pr] : pairs) {
        c.guard(poly + " " + pr, [&] {
            auto P = polytope_by_name(poly);
            auto scan = coercivity_scan(pair_by_name(P, pr), 0, cases, seed);
            for (const auto& v : scan.violations)
                c.expect(false, poly + " " + pr + " sample " + std::to_string(v.sample) + ": " + v.inequality + " (" +
                                    v.detail + ")");
            summary << poly << "/" << pr << ": min M/J = " << (scan.min_M_over_J ? scan.min_M_over_J->str() : "n/a")
                    << ", min H/I = " << (scan.min_H_over_I ? scan.min_H_over_I->str() : "n/a") << "; ";
        });
    }
    summary << "(" << cases << " samples each)";
    return c.result(summary.str());
}

CheckResult check_energy_routes(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "three-route energy and F0 = E", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            auto e = energy_routes(rc.phi);
            if (e.barycenter != e.integral || e.integral != e.intersection)
                return "E routes " + e.barycenter.str() + " / " + e.integral.str() + " / " + e.intersection.str();
            auto f = df_weight_fit(rc.phi);
            if (f.F0 != e.barycenter) return "F0 " + f.F0.str() + " != E " + e.barycenter.str();
            return std::nullopt;
        },
        "barycenter = integral of f = (phi^(n+1))/((n+1)V) = F0");
}

CheckResult check_reconstruction(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "filtration reconstruction from components", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            auto comps = rc.phi.components(rc.pair);
            const auto& P = rc.phi.polytope();
            std::vector<Rat> mins;
            for (const auto& e : comps) mins.push_back(P.min_of(e.valuation.w));
            for (std::int64_t k = 1; k <= 12; ++k) {
                const std::int64_t m = rc.phi.N0() * k;
                const Rat mm(static_cast<long>(m));
                std::optional<std::string> bad;
                for_each_lattice_point(P, m, [&](const LatticePoint& u) {
                    if (bad) return;
                    Vec uv;
                    for (auto x : u) uv.push_back(Rat(static_cast<long>(x)));
                    Rat best;
                    for (std::size_t i = 0; i < comps.size(); ++i) {
                        Rat v = dot(comps[i].valuation.w, uv) - mm * mins[i] + mm * comps[i].phi_value;
                        if (i == 0 || v < best) best = v;
                    }
                    if (to_int64(best.floor()) != rc.phi.weight(u, m))
                        bad = "m=" + std::to_string(m) + " u=" + to_string(uv);
                });
                if (bad) return bad;
            }
            return std::nullopt;
        },
        "w_m(u) = floor(min_E(v_E(u) + m phi(v_E))) for m in {N0,...,12 N0}");
}

namespace {

// sup over the relevant points of |mu_m{x >= l} - nu{x >= l}| and the open analog.
Rat tail_distance(const PPMeasure& a, const PPMeasure& b) {
    std::vector<Rat> pts = a.breakpoints();
    auto more = b.breakpoints();
    pts.insert(pts.end(), more.begin(), more.end());
    Rat best;
    for (const auto& x : pts) {
        best = max(best, abs(a.cdf_tail(x) - b.cdf_tail(x)));
        best = max(best, abs(a.cdf_tail_open(x) - b.cdf_tail_open(x)));
    }
    return best;
}

}  // namespace

CheckResult check_dh_convergence(std::uint64_t seed, std::size_t cases) {
    std::vector<Rat> worst(cases);
    auto res = over_cases(
        "DH convergence", seed, cases,
        [&](const RandomCase& rc) -> std::optional<std::string> {
            const PPMeasure nu = rc.phi.dh_exact();
            std::vector<Rat> K;
            for (std::int64_t k = 1; k <= 12; ++k) {
                const std::int64_t m = rc.phi.N0() * k;
                K.push_back(Rat(static_cast<long>(m)) * tail_distance(scaled_weight_measure(rc.phi.filtration_of(m)), nu));
            }
            Rat early, late;
            for (std::size_t i = 0; i < 8; ++i) early = max(early, K[i]);
            for (std::size_t i = 8; i < 12; ++i) late = max(late, K[i]);
            if (late > Rat(2) * early) return "m * sup|tail difference| grows: early max " + early.str() + ", late max " + late.str();
            return std::nullopt;
        },
        "m * sup_lambda |mu_m{x>=lambda} - DH{x>=lambda}| bounded over m in {N0,...,12 N0}");
    return res;
}

CheckResult check_extremal_weights(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "lambda_max growth and support", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            Rat prev;
            for (std::int64_t k = 1; k <= 6; ++k) {
                const std::int64_t m = rc.phi.N0() * k;
                auto gw = rc.phi.filtration_of(m);
                const Rat top = Rat(static_cast<long>(gw.entries().back().first)) / Rat(static_cast<long>(m));
                const Rat bottom = Rat(static_cast<long>(gw.entries().front().first)) / Rat(static_cast<long>(m));
                if (k > 1 && top < prev) return "lambda_max^(m)/m decreases";
                if (top != rc.phi.lambda_max()) return "lambda_max^(m)/m != lambda_max at m=" + std::to_string(m);
                if (bottom != rc.phi.lambda_min()) return "lambda_min^(m)/m != lambda_min at m=" + std::to_string(m);
                prev = top;
            }
            auto comps = rc.phi.components(rc.pair, true);
            Rat lo = comps.front().phi_value, hi = lo;
            for (const auto& e : comps) {
                lo = min(lo, e.phi_value);
                hi = max(hi, e.phi_value);
            }
            auto dh = rc.phi.dh_exact();
            if (dh.support_min() != lo || dh.support_max() != hi)
                return "supp DH = [" + dh.support_min().str() + "," + dh.support_max().str() + "] but phi values span [" +
                       lo.str() + "," + hi.str() + "]";
            if (lo != rc.phi.lambda_min() || hi != rc.phi.lambda_max()) return "extremal phi values differ from min/max f";
            return std::nullopt;
        },
        "lambda_max^(m)/m = lambda_max along N0 Z; supp DH = [min_E phi(v_E), max_E phi(v_E)]");
}

CheckResult check_cross_routes(std::uint64_t seed, std::size_t cases) {
    Checker c("6 cross-route identities");
    std::vector<CheckResult> parts = {check_energy_routes(seed, cases), check_reconstruction(seed, cases),
                                      check_dh_convergence(seed, cases)};
    std::string summary;
    for (const auto& p : parts) {
        c.expect(p.passed, p.name + ": " + p.detail);
        summary += (summary.empty() ? "" : "; ") + p.name;
    }
    return c.result(summary + " (" + std::to_string(cases) + " cases)");
}

CheckResult check_transformation_laws(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "7 transformation laws", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            Rng rng(rc.seed ^ 0x5bd1e995ULL);
            const Rat c(rng.uniform(-2, 2), rng.uniform(1, 3));
            const auto r = compute_report(rc.phi, rc.pair);
            const auto t = compute_report(rc.phi.translate(c), rc.pair);
            if (t.E != r.E + c) return "E(phi+c) != E + c";
            if (t.lambda_max != r.lambda_max + c) return "lambda_max(phi+c)";
            if (t.I != r.I || t.J != r.J || t.l1 != r.l1 || t.l2_squared != r.l2_squared || t.linf != r.linf)
                return "I, J or norms not translation invariant";
            if (t.H != r.H || t.M != r.M || t.DF != r.DF) return "H, M or DF not translation invariant";
            if (t.R != r.R - r.Sbar * c) return "R(phi+c) != R - Sbar c";
            if (r.ding_L && (*t.ding_L != *r.ding_L + c || *t.ding_D != *r.ding_D)) return "Ding translation law";
            if (!(rc.phi.translate(c).dh_exact() == rc.phi.dh_exact().pushforward_affine(1, c))) return "DH(phi+c)";

            const std::int64_t d = rng.uniform(2, 3);
            const auto phid = rc.phi.scale_base_change(d);
            const Rat dd(static_cast<long>(d));
            const auto s = compute_report(phid, rc.pair);
            if (!(phid.dh_exact() == rc.phi.dh_exact().pushforward_affine(dd, 0))) return "DH(phi_d)";
            if (s.E != dd * r.E || s.I != dd * r.I || s.J != dd * r.J || s.l1 != dd * r.l1 ||
                s.l2_squared != dd * dd * r.l2_squared || s.linf != dd * r.linf)
                return "E, I, J or norms not homogeneous";
            if (s.H != dd * r.H || s.R != dd * r.R || s.M != dd * r.M) return "H, R or M not homogeneous";
            if (s.DF - dd * r.M != s.error_term || s.error_term.sign() < 0) return "DF(phi_d) - d M(phi) != error term";

            std::vector<Rat> slopes;
            for (const auto& p : rc.phi.f().pieces()) slopes.insert(slopes.end(), p.a.begin(), p.a.end());
            const std::int64_t D = to_int64(lcm_of_denominators(slopes));
            const auto phiD = rc.phi.scale_base_change(D);
            const Rat DD(static_cast<long>(D));
            if (log_df(phiD, rc.pair) != DD * r.M) return "DF(phi_d) != d M(phi) for d = " + std::to_string(D);
            return std::nullopt;
        },
        "phi+c and phi_d: full reports follow the translation and homogeneity laws; DF(phi_d) = d M(phi) once d clears slopes");
}

CheckResult check_rees_oracle(std::uint64_t seed, std::size_t cases) {
    Checker c("8 Rees valuations and integral closure");
    auto outcomes = parallel_map<std::optional<std::string>>(cases, [&](std::size_t i) -> std::optional<std::string> {
        const std::uint64_t s = case_seed(seed, i);
        Rng rng(s);
        MonomialIdeal a = random_ideal(rng);
        try {
            const std::size_t n = a.nvars();
            std::int64_t top = 0;
            for (const auto& g : a.generators())
                for (auto e : g) top = std::max(top, e);
            auto rees = rees_valuations(a);
            for (const auto& v : rees)
                if (v(a) != Rat(1)) return a.str() + ": " + v.str() + " not normalized";
            // Membership: Newton polyhedron vs explicit power certificates.
            for (std::int64_t m = 1; m <= 4; ++m) {
                for (int trial = 0; trial < 30; ++trial) {
                    Exponent u(n);
                    for (auto& x : u) x = rng.uniform(0, m * top + 1);
                    const bool newton = in_integral_closure(u, a, m);
                    const bool cert = closure_certificate(u, a, m).has_value();
                    if (newton != cert) return a.str() + ": membership of " + to_string(Vec(u.begin(), u.end())) +
                                               " in closure of a^" + std::to_string(m) + " disagrees";
                    if (power_membership(u, a, m, 2) && !newton) return a.str() + ": power witness outside closure";
                }
            }
            // Minimality: each valuation is needed for some m <= 4. Weights are
            // scaled to integers so the box scan stays cheap.
            std::vector<std::vector<std::int64_t>> iw;
            std::vector<std::int64_t> den;
            for (const auto& v : rees) {
                const mpz_class d = lcm_of_denominators(v.w);
                den.push_back(to_int64(d));
                std::vector<std::int64_t> row;
                for (const auto& x : v.w) row.push_back((x * Rat(d)).to_int64());
                iw.push_back(std::move(row));
            }
            for (std::size_t k = 0; k < rees.size(); ++k) {
                bool found = false;
                for (std::int64_t m = 1; m <= 4 && !found; ++m) {
                    const std::int64_t B = 2 * m * top + 1;
                    Exponent u(n, 0);
                    std::function<void(std::size_t)> rec = [&](std::size_t j) {
                        if (found) return;
                        if (j == n) {
                            auto val = [&](std::size_t o) {
                                std::int64_t s = 0;
                                for (std::size_t t = 0; t < n; ++t) s += iw[o][t] * u[t];
                                return s;
                            };
                            if (val(k) >= m * den[k]) return;
                            for (std::size_t o = 0; o < rees.size(); ++o)
                                if (o != k && val(o) < m * den[o]) return;
                            found = true;
                            return;
                        }
                        for (std::int64_t x = 0; x <= B && !found; ++x) {
                            u[j] = x;
                            rec(j + 1);
                        }
                    };
                    rec(0);
                }
                if (!found) return a.str() + ": dropping " + rees[k].str() + " changes nothing for m <= 4";
            }
            // Deformation to the normal cone.
            auto def = rees_of_deformation(a);
            if (def.empty() || !def.front().restricted.is_trivial()) return a.str() + ": t-adic valuation missing";
            std::set<Vec, VecLess> lhs, rhs;
            for (std::size_t k = 1; k < def.size(); ++k) {
                if (def[k].restricted(a) != Rat(1)) return a.str() + ": restricted valuation not normalized";
                lhs.insert(def[k].restricted.w);
            }
            for (const auto& v : rees) rhs.insert(v.w);
            if (lhs != rhs) return a.str() + ": restrictions differ from the Rees valuations";
        } catch (const std::exception& e) {
            return a.str() + ": exception " + e.what();
        }
        return std::nullopt;
    });
    for (std::size_t i = 0; i < outcomes.size(); ++i)
        c.expect(!outcomes[i], "ideal " + std::to_string(i) + " (seed " + std::to_string(case_seed(seed, i)) +
                                   "): " + outcomes[i].value_or(""));
    return c.result("Newton membership = LP/power certificates, minimality for m <= 4, deformation restriction (" +
                    std::to_string(cases) + " ideals)");
}

CheckResult check_ehrhart() {
    Checker c("9 Ehrhart and weight polynomials");
    for (const std::string name : {"segment:1", "segment:2", "simplex:2", "simplex:3", "square", "square:2",
                                   "p2-anticanonical", "p1xp1-anticanonical"}) {
        c.guard(name, [&] {
            auto P = polytope_by_name(name);
            const int n = P.dim();
            std::map<std::int64_t, Rat> counts;
            for (std::int64_t m = 1; m <= n + 4; ++m) counts[m] = Rat(static_cast<long>(count_lattice_points(P, m)));
            auto fit = fit_eventual_polynomial(counts, n, 1).poly;
            Rat half;
            for (const auto& f : P.facets()) half += facet_lattice_volume(P, f);
            half /= Rat(2);
            c.eq(fit.coeff(n), P.volume(), name + " leading Ehrhart coefficient");
            c.eq(fit.coeff(n - 1), half, name + " subleading Ehrhart coefficient");
        });
    }
    std::vector<ToricMetric> metrics = {flagship(), metric_by_name("pn-blowup:2,1/3"), metric_by_name("p1-onePS:3"),
                                        ToricMetric::from_one_ps(segment(0, 1), {Rat(1, 2)}, 0)};
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        c.guard("weight sums", [&] {
            const auto& phi = metrics[i];
            const int n = phi.dim();
            for (unsigned d = 0; d <= 2; ++d) {
                std::map<std::int64_t, Rat> s;
                for (std::int64_t k = 1; k <= n + static_cast<int>(d) + 4; ++k)
                    s[phi.N0() * k] = phi.filtration_of(phi.N0() * k).power_sum(d);
                fit_eventual_polynomial(s, n + static_cast<int>(d), phi.N0());
            }
        });
    }
    return c.result("N_m = vol(P) m^n + (1/2) sum latvol(F) m^(n-1) + ... on 8 catalog polytopes; sum lambda^d of degree <= n+d");
}

CheckResult check_pair_classification() {
    Checker c("10 pair classification");
    std::ostringstream summary;
    const auto P = simplex(2);
    for (Rat b : {Rat(0), Rat(1), Rat(3, 2)}) {
        c.guard("b=" + b.str(), [&] {
            ToricPair pair(P, {{{1, 0}, b}});
            auto cls = classify_pair(pair);
            auto dest = find_destabilizer(pair);
            summary << "b=" << b << ": " << to_string(cls);
            if (b == Rat(0)) {
                c.expect(cls == PairClass::klt, "B=0 must be klt");
                c.expect(!dest, "klt pair must have no destabilizer");
                // H > 0 on nontrivial metrics.
                Rng rng(7);
                for (int i = 0; i < 20; ++i) {
                    auto phi = random_metric(rng, P);
                    if (phi.is_almost_trivial()) continue;
                    c.expect(entropy(phi, pair).sign() > 0, "H > 0 fails on a nontrivial metric");
                }
                summary << " (no destabilizer; H > 0 on sampled nontrivial metrics)";
            } else {
                c.expect(dest.has_value(), "destabilizer expected");
                if (!dest) return;
                const Rat H = entropy(*dest, pair);
                c.expect(!dest->is_almost_trivial(), "destabilizer must be nontrivial");
                if (b == Rat(1)) {
                    c.expect(cls == PairClass::lc_not_klt, "b=1 must be lc-not-klt");
                    c.eq(H, 0, "H of the lc witness");
                } else {
                    c.expect(cls == PairClass::not_lc, "b=3/2 must be not-lc");
                    c.expect(H.sign() < 0, "H < 0 expected, got " + H.str());
                }
                summary << " (destabilizer H = " << H << ")";
            }
            summary << "; ";
        });
    }
    return c.result(summary.str());
}

CheckResult check_triviality(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "11 triviality criteria", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            Rng rng(rc.seed ^ 0x2545f491ULL);
            const Rat c(rng.uniform(-3, 3), rng.uniform(1, 3));
            for (const auto& phi : {rc.phi, ToricMetric::trivial(rc.phi.polytope(), c)}) {
                const bool t = phi.is_almost_trivial();  // throws if the criteria disagree
                const bool zero = i_j_norms(phi).l1.is_zero();
                const bool flat = phi.f().pieces().size() == 1 &&
                                  std::all_of(phi.f().pieces()[0].a.begin(), phi.f().pieces()[0].a.end(),
                                              [](const Rat& x) { return x.is_zero(); });
                if (t != zero || zero != flat) return std::string("L1 = 0 does not characterize phi_triv + c");
            }
            return std::nullopt;
        },
        "affine-flat f <=> DH Dirac <=> L1 = 0 on random metrics and their trivial twists");
}

// ---------------------------------------------------------------- properties

CheckResult check_measure_properties(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "measure and superlevel properties", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            Rng rng(rc.seed ^ 0x9e3779b9ULL);
            const PPMeasure mu = rc.phi.dh_exact();
            const int n = rc.phi.dim();
            if (!mu.is_probability()) return "DH is not a probability measure";
            if (mu.atoms().size() > 1) return "more than one atom";
            if (!mu.atoms().empty() && mu.atoms()[0].location != rc.phi.lambda_max()) return "atom away from lambda_max";
            for (const auto& p : mu.pieces())
                if (p.density.degree() > n - 1) return "density degree exceeds n-1";
            const Rat alpha(rng.uniform(1, 4), rng.uniform(1, 3));
            const Rat beta(rng.uniform(-3, 3), rng.uniform(1, 2));
            const Rat sign = rng.uniform(0, 1) ? Rat(1) : Rat(-1);
            auto pushed = mu.pushforward_affine(sign * alpha, beta);
            if (pushed.moment(1) != sign * alpha * mu.moment(1) + beta) return "pushforward moment law";
            auto shifted = mu.pushforward_affine(1, beta);
            auto scaled = mu.pushforward_affine(alpha, 0);
            for (int p : {0, 1, 2}) {
                if (shifted.central_lp_norm(p).power != mu.central_lp_norm(p).power) return "norm not shift invariant";
                const Rat k = p == 0 ? alpha : alpha.pow(static_cast<unsigned>(p));
                if (scaled.central_lp_norm(p).power != k * mu.central_lp_norm(p).power) return "norm not homogeneous";
            }
            const Rat l1 = *mu.central_lp_norm(1).value;
            if (mu.central_lp_norm(2).power < l1 * l1) return "L2 < L1";
            if (*mu.central_lp_norm(0).value < l1) return "Linf < L1";
            if (!check_tail_root_concavity(mu, n).holds) return "tail^(1/n) not concave";
            // Superlevel volumes.
            const auto& P = rc.phi.polytope();
            SuperlevelVolume S(P, rc.phi.f());
            if (S(rc.phi.lambda_min()) != P.volume()) return "superlevel at min f != vol P";
            if (S(rc.phi.lambda_max() + Rat(1, 7)) != 0) return "superlevel above max f != 0";
            const auto& br = S.breakpoints();
            Rat prev = P.volume();
            for (std::size_t k = 0; k + 1 < br.size(); ++k) {
                for (int j = 0; j <= 4; ++j) {
                    Rat x = br[k] + (br[k + 1] - br[k]) * Rat(j, 4);
                    Rat v = S(x);
                    if (v > prev) return "superlevel volume increases";
                    if (v != superlevel_volume_at(P, rc.phi.f(), x)) return "interpolated superlevel volume is off";
                    prev = v;
                }
            }
            Rat top = mu.atoms().empty() ? Rat(0) : mu.atoms()[0].mass;
            Rat dens;
            for (const auto& p : mu.pieces()) dens += p.density.integrate(p.left, p.right);
            if (dens != Rat(1) - top) return "density mass != 1 - atom";
            return std::nullopt;
        },
        "pushforward moments, norm invariance/homogeneity, L2 >= L1, Linf >= L1, DH shape, concavity, superlevel volumes");
}

CheckResult check_error_term_formula(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "error term = reduced defect", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            auto r = compute_report(rc.phi, rc.pair);
            Rat want = reduced_defect(rc.phi, rc.pair);
            if (r.error_term != want) return "DF - M = " + r.error_term.str() + " but sum (1-1/b) mass = " + want.str();
            return std::nullopt;
        },
        "DF_B - M = sum_E (1 - 1/b_E) mass_E");
}

CheckResult check_ke_identity(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "KE identity", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            auto lam = rc.pair.canonical_proportionality();
            if (!lam) return std::nullopt;
            auto r = compute_report(rc.phi, rc.pair);
            if (r.M != r.H + *lam * (r.I - r.J))
                return "M = " + r.M.str() + " but H + lambda(I-J) = " + (r.H + *lam * (r.I - r.J)).str();
            return std::nullopt;
        },
        "M = H + lambda(I - J) whenever K_(X,B) = lambda L");
}

CheckResult check_monotone_chain(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "monotone intersection chain", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            const auto& P = rc.phi.polytope();
            const int n = P.dim();
            std::optional<Rat> prev;
            for (int j = 0; j <= n; ++j) {
                std::vector<MetricSlot> rest;
                for (int k = 0; k < j; ++k) rest.push_back(MetricSlot::of(rc.phi));
                for (int k = j; k < n; ++k) rest.push_back(MetricSlot::trivial(P));
                auto with = rest, without = rest;
                with.insert(with.begin(), MetricSlot::of(rc.phi));
                without.insert(without.begin(), MetricSlot::trivial(P));
                Rat a = intersection_number(with) - intersection_number(without);
                if (prev && a > *prev) return "chain increases at j=" + std::to_string(j);
                prev = a;
            }
            return std::nullopt;
        },
        "((phi - phi_triv) . phi^j . phi_triv^(n-j)) non-increasing in j");
}

CheckResult check_mixed_volume_properties(std::uint64_t seed, std::size_t cases) {
    Checker c("mixed volume symmetry and multilinearity");
    for (std::size_t i = 0; i < cases; ++i) {
        Rng rng(case_seed(seed, i));
        const int d = static_cast<int>(rng.uniform(2, 3));
        auto body = [&] {
            std::vector<Vec> pts;
            const auto k = rng.uniform(1, d + 2);
            for (std::int64_t j = 0; j < k; ++j) {
                Vec p;
                for (int t = 0; t < d; ++t) p.push_back(Rat(rng.uniform(0, 2)));
                pts.push_back(std::move(p));
            }
            return LatticePolytope::from_points(std::move(pts));
        };
        std::vector<LatticePolytope> K;
        for (int t = 0; t < d; ++t) K.push_back(body());
        LatticePolytope K2 = body();
        c.guard("case " + std::to_string(i), [&] {
            Rat mv = mixed_volume(K);
            auto rev = K;
            std::reverse(rev.begin(), rev.end());
            c.eq(mixed_volume(rev), mv, "symmetry");
            auto sum = K;
            sum[0] = minkowski_sum({K[0], K2}, {1, 1});
            auto other = K;
            other[0] = K2;
            c.eq(mixed_volume(sum), mv + mixed_volume(other), "additivity in the first slot");
            std::vector<LatticePolytope> same(static_cast<std::size_t>(d), K[0]);
            c.eq(mixed_volume(same), K[0].volume(), "MV(K,...,K) = vol K");
        });
    }
    return c.result("random bodies in R^2 and R^3 (" + std::to_string(cases) + " cases)");
}

CheckResult check_weight_sums(std::uint64_t seed, std::size_t cases) {
    return over_cases(
        "weight sums and fits", seed, cases,
        [](const RandomCase& rc) -> std::optional<std::string> {
            const int n = rc.phi.dim();
            for (unsigned d = 0; d <= 2; ++d) {
                std::map<std::int64_t, Rat> s;
                for (std::int64_t k = 1; k <= n + static_cast<int>(d) + 4; ++k) {
                    const std::int64_t m = rc.phi.N0() * k;
                    auto gw = rc.phi.filtration_of(m);
                    s[m] = gw.power_sum(d);
                    if (d == 1) {
                        const Rat scale = Rat(static_cast<long>(m)) * Rat(static_cast<long>(gw.N()));
                        if (scaled_weight_measure(gw).moment(1) * scale != gw.w()) return "weight measure mean";
                        if (gw.N() != count_lattice_points(rc.phi.polytope(), m)) return "N_m != lattice points";
                    }
                }
                auto fit = fit_eventual_polynomial(s, n + static_cast<int>(d), rc.phi.N0());
                std::map<std::int64_t, Rat> again;
                for (const auto& [m, v] : s) again[m] = fit.poly(Rat(static_cast<long>(m)));
                if (!(fit_eventual_polynomial(again, n + static_cast<int>(d), rc.phi.N0()).poly == fit.poly))
                    return "refit is not idempotent";
            }
            // Flag ideal pieces: F^lambda is the span of sections of weight >= lambda.
            const std::int64_t m = rc.phi.N0();
            auto gw = rc.phi.filtration_of(m);
            std::int64_t above = 0;
            for (auto it = gw.entries().rbegin(); it != gw.entries().rend(); ++it) {
                above += it->second;
                if (static_cast<std::int64_t>(rc.phi.flag_ideal_piece(m, it->first).size()) != above)
                    return "dim F^lambda mismatch";
            }
            return std::nullopt;
        },
        "sum lambda^d eventually polynomial of degree <= n+d; fits idempotent; flag ideal dimensions");
}

// ---------------------------------------------------------------- suites

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"measures", "filtration", "testconfig", "functionals",
                                                   "inequalities", "asymptotics", "all"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts) {
    auto n = [&](std::size_t def) { return opts.cases.value_or(def); };
    const auto s = opts.seed;
    std::vector<std::function<CheckResult()>> checks;
    const bool all = suite == "all";
    if (all || suite == "measures") {
        checks.push_back(check_exactnum_examples);
        checks.push_back(check_measure_examples);
        checks.push_back(check_convex_examples);
        checks.push_back([=] { return check_measure_properties(s, n(100)); });
        checks.push_back([=] { return check_mixed_volume_properties(s, n(40)); });
    }
    if (all || suite == "filtration") {
        checks.push_back(check_filtration_examples);
        checks.push_back([=] { return check_rees_oracle(s, n(100)); });
        checks.push_back([=] { return check_weight_sums(s, n(60)); });
    }
    if (all || suite == "testconfig") {
        checks.push_back(check_testconfig_examples);
        checks.push_back([=] { return check_reconstruction(s, n(200)); });
        checks.push_back([=] { return check_dh_convergence(s, n(200)); });
        checks.push_back([=] { return check_extremal_weights(s, n(200)); });
        checks.push_back([=] { return check_triviality(s, n(200)); });
        checks.push_back(check_ehrhart);
    }
    if (all || suite == "functionals") {
        checks.push_back(check_functional_examples);
        checks.push_back(check_flagship);
        checks.push_back(check_one_ps);
        checks.push_back([=] { return check_energy_routes(s, n(200)); });
        checks.push_back([=] { return check_error_term_formula(s, n(200)); });
        checks.push_back([=] { return check_transformation_laws(s, n(50)); });
        checks.push_back([=] { return check_ke_identity(s, n(200)); });
        checks.push_back([=] { return check_monotone_chain(s, n(100)); });
        checks.push_back(check_pair_classification);
    }
    if (all || suite == "inequalities") {
        checks.push_back([=] { return check_inequalities(s, n(200)); });
        checks.push_back([=] { return check_coercivity_scan(s, n(50)); });
    }
    if (all || suite == "asymptotics") {
        checks.push_back(check_dh_formula);
        checks.push_back(check_epsilon_exponents);
    }
    if (checks.empty()) throw InputError("unknown suite '" + suite + "'");
    std::vector<CheckResult> out;
    for (auto& f : checks) out.push_back(f());
    return out;
}

}  // namespace kstab

#include "doctest.h"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/functionals.hpp"

using namespace kstab;

namespace {
ToricMetric flagship() { return ToricMetric::deformation_to_normal_cone(segment(0, 1), {0}, Rat(1, 2)); }
}  // namespace

TEST_CASE("flagship report") {
    auto r = compute_report(flagship(), ToricPair(segment(0, 1), {}));
    CHECK(r.V == 1);
    CHECK(r.Sbar == 2);
    CHECK(r.E == Rat(-1, 8));
    CHECK(r.I == Rat(1, 4));
    CHECK(r.J == Rat(1, 8));
    CHECK(r.l1 == Rat(9, 64));
    CHECK(r.F0 == Rat(-1, 8));
    CHECK(r.F1 == Rat(-1, 8));
    CHECK(r.DF == Rat(1, 4));
    CHECK(r.H == Rat(1, 2));
    CHECK(r.R == 0);
    CHECK(r.M == Rat(1, 4));
    CHECK(r.error_term == 0);
    CHECK_FALSE(r.ding_L);
}

TEST_CASE("intersection numbers") {
    auto P = simplex(2);
    auto phi = MetricSlot::of(ToricMetric::deformation_to_normal_cone(P, {0, 0}, Rat(1, 3)));
    auto triv = MetricSlot::trivial(P);
    CHECK(intersection_number({triv, triv, triv}) == 0);
    // (phi^3) = 3 V E with E = -eps^3/3.
    CHECK(intersection_number({phi, phi, phi}) == Rat(-1, 27));
    CHECK(degree(P) == 1);
    CHECK(degree(anticanonical_p2()) == 9);
    CHECK(intersection_with_class(P, log_canonical_class(ToricPair(P, {})), {triv, triv}) == 0);
}

TEST_CASE("energy routes agree") {
    auto e = energy_routes(ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, Rat(1, 3)));
    CHECK(e.barycenter == Rat(-1, 81));
    CHECK(e.integral == e.barycenter);
    CHECK(e.intersection == e.barycenter);
}

TEST_CASE("P^2 blow-up family") {
    ToricPair pair(simplex(2), {});
    auto r = compute_report(ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, Rat(1, 3)), pair);
    CHECK(r.H == Rat(2, 9));
    CHECK(r.M == Rat(4, 27));
    CHECK(r.DF == Rat(4, 27));
    CHECK(r.J == Rat(1, 81));
    // O(1) on P^2 is not anticanonical.
    CHECK_FALSE(r.ding_D);
}

TEST_CASE("one-parameter subgroups") {
    ToricPair pair(segment(0, 1), {});
    for (long d = 1; d <= 3; ++d) {
        auto r = compute_report(ToricMetric::from_one_ps(segment(0, 1), {d}, 0), pair);
        CHECK(r.DF == 0);
        CHECK(r.M == 0);
        CHECK(r.H == d);
        CHECK(r.R == -2 * d);
        CHECK(r.J == Rat(d, 2));
        CHECK(r.I == d);
    }
}

TEST_CASE("non-reduced central fibre") {
    ToricPair pair(segment(0, 1), {});
    auto phi = ToricMetric::from_one_ps(segment(0, 1), {Rat(1, 2)}, 0);
    auto r = compute_report(phi, pair);
    CHECK(r.DF == Rat(1, 2));
    CHECK(r.M == 0);
    CHECK(r.error_term == Rat(1, 2));
    CHECK(reduced_defect(phi, pair) == Rat(1, 2));
    CHECK(log_df(phi.scale_base_change(2), pair) == 0);
}

TEST_CASE("log Donaldson-Futaki with boundary") {
    ToricPair pair(segment(0, 1), {{{1}, Rat(1, 2)}});
    auto r = compute_report(flagship(), pair);
    CHECK(r.Sbar == Rat(3, 2));
    CHECK(r.DF == r.M);
    CHECK(r.DF_boundary != 0);
}

TEST_CASE("Ding functional") {
    auto P = segment(0, 2);
    ToricPair fano(P, {});
    auto d = ding(ToricMetric(P, PLFunction({{{0}, 0}, {{1}, Rat(-1, 2)}})), fano);
    CHECK(d.L == 0);
    CHECK(d.D == Rat(1, 16));
    auto t = ding(ToricMetric::from_one_ps(P, {3}, 0), fano);
    CHECK(t.L == 3);
    CHECK(t.D == 0);
    CHECK_THROWS_AS(ding(flagship(), ToricPair(segment(0, 1), {})), InputError);
}

TEST_CASE("pair classification and destabilizers") {
    auto P = simplex(2);
    CHECK(classify_pair(ToricPair(P, {})) == PairClass::klt);
    CHECK_FALSE(find_destabilizer(ToricPair(P, {})));
    ToricPair lc(P, {{{1, 0}, 1}});
    CHECK(classify_pair(lc) == PairClass::lc_not_klt);
    auto w = find_destabilizer(lc);
    REQUIRE(w);
    CHECK(entropy(*w, lc) == 0);
    ToricPair bad(P, {{{1, 0}, Rat(3, 2)}});
    CHECK(classify_pair(bad) == PairClass::not_lc);
    auto v = find_destabilizer(bad);
    REQUIRE(v);
    CHECK(entropy(*v, bad) == Rat(-3, 8));
    CHECK(to_string(PairClass::lc_not_klt) == "lc-not-klt");
    CHECK_THROWS_AS(ToricPair(P, {{{1, 1}, 1}}), InputError);
}

TEST_CASE("canonical proportionality") {
    CHECK(ToricPair(segment(0, 1), {}).canonical_proportionality() == Rat(-2));
    CHECK(ToricPair(anticanonical_p2(), {}).canonical_proportionality() == Rat(-1));
    CHECK_FALSE(ToricPair(unit_square(), {{{1, 0}, Rat(1, 2)}}).canonical_proportionality());
}

TEST_CASE("leading terms") {
    std::vector<std::pair<Rat, Rat>> s;
    for (long k = 2; k <= 8; ++k) {
        Rat e(1, k);
        s.emplace_back(e, Rat(2) * e * e - Rat(2) * e * e * e);
    }
    auto t = leading_term(s);
    CHECK(t.polynomial);
    CHECK(t.exponent == 2);
    CHECK(t.coefficient == 2);
}

TEST_CASE("Ding on the anticanonical P^2") {
    auto P = anticanonical_p2();
    ToricPair fano(P, {});
    auto phi = ToricMetric::deformation_to_normal_cone(P, {-1, -1}, 1);
    auto r = compute_report(phi, fano);
    REQUIRE(r.ding_D);
    CHECK(*r.ding_D <= r.J);
    CHECK(*r.ding_D <= r.M);
    CHECK(r.M == r.H - (r.I - r.J));
}

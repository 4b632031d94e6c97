#include <set>

#include "doctest.h"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/filtration.hpp"
#include "kstab/testconfig.hpp"

using namespace kstab;

TEST_CASE("graded weights") {
    GradedWeights g(2, {{0, 1}, {-1, 1}, {0, 1}});
    CHECK(g.N() == 3);
    CHECK(g.w() == -1);
    CHECK(g.power_sum(2) == 1);
    CHECK(g.entries() == std::vector<std::pair<std::int64_t, std::int64_t>>{{-1, 1}, {0, 2}});
    CHECK(scaled_weight_measure(g) == PPMeasure({{Rat(-1, 2), Rat(1, 3)}, {0, Rat(2, 3)}}, {}));
}

TEST_CASE("monomial ideals") {
    auto a = MonomialIdeal::parse("x^2, y, x^2*y");
    CHECK(a.generators().size() == 2);
    CHECK(a.contains({3, 0}));
    CHECK_FALSE(a.contains({1, 0}));
    CHECK(MonomialIdeal::parse("1", 2).is_unit());
    CHECK_THROWS_AS(MonomialIdeal::parse("x^", 0), InputError);
    CHECK_THROWS_AS(MonomialIdeal::parse("", 0), InputError);
}

TEST_CASE("monomial valuations") {
    MonomialValuation v{{Rat(1, 2), 1}};
    CHECK(v({2, 1}) == 2);
    CHECK(v(MonomialIdeal::parse("x^2,y")) == 1);
    CHECK(v.str() == "val_(1,2)/2");
    CHECK(MonomialValuation{{1, 0}}.str() == "ord_x");
    CHECK(MonomialValuation{{0, 0}}.str() == "v_triv");
}

TEST_CASE("Gauss extension") {
    MonomialValuation v{{Rat(1, 2), 1}};
    CHECK(gauss_extension_eval(v, {{{0, 0}, 1}}) == 1);
    CHECK(gauss_extension_eval(v, {{{1, 1}, -1}, {{0, 0}, 1}}) == Rat(1, 2));
    CHECK_THROWS_AS(gauss_extension_eval(v, {}), InputError);
}

TEST_CASE("Rees valuations") {
    auto r = rees_valuations(MonomialIdeal::parse("x^3,x*y,y^2"));
    REQUIRE(r.size() == 2);
    std::set<Vec, VecLess> ws;
    for (const auto& v : r) ws.insert(v.w);
    CHECK(ws == std::set<Vec, VecLess>{{Rat(1, 3), Rat(2, 3)}, {Rat(1, 2), Rat(1, 2)}});
    auto x = rees_valuations(MonomialIdeal::parse("x"));
    REQUIRE(x.size() == 1);
    CHECK(x[0].str() == "ord_x");
    CHECK(rees_valuations(MonomialIdeal::parse("1", 2)).empty());
}

TEST_CASE("integral closure") {
    auto a = MonomialIdeal::parse("x^2,y^2");
    CHECK(in_integral_closure({1, 1}, a, 1));
    CHECK_FALSE(a.contains({1, 1}));
    auto cert = closure_certificate({1, 1}, a, 1);
    REQUIRE(cert);
    CHECK(*cert == 2);
    CHECK(power_membership({1, 1}, a, 1, 2));
    CHECK_FALSE(in_integral_closure({1, 0}, a, 1));
    CHECK_FALSE(closure_certificate({1, 0}, a, 1));
}

TEST_CASE("deformation to the normal cone") {
    auto d = rees_of_deformation(MonomialIdeal::parse("x^2,y"));
    REQUIRE(d.size() == 2);
    CHECK(d[0].restricted.is_trivial());
    CHECK(d[1].ord.w == Vec{1, 2, 2});
    CHECK(d[1].b == 2);
    CHECK(d[1].restricted.w == Vec{Rat(1, 2), 1});
}

TEST_CASE("successive minima of the flagship") {
    auto phi = ToricMetric::deformation_to_normal_cone(segment(0, 1), {0}, Rat(1, 2));
    auto g = phi.filtration_of(4);
    CHECK(g == GradedWeights(4, {{-2, 1}, {-1, 1}, {0, 3}}));
    CHECK(successive_minima(g) == std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 3}, {-1, 1}, {-2, 1}});
}

#include "doctest.h"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/testconfig.hpp"

using namespace kstab;

TEST_CASE("N0 and extremal values") {
    auto phi = ToricMetric::deformation_to_normal_cone(segment(0, 1), {0}, Rat(1, 2));
    CHECK(phi.N0() == 2);
    CHECK(phi.lambda_max() == 0);
    CHECK(phi.lambda_min() == Rat(-1, 2));
    // min(x, 1 - 2x) has integral slopes and constants but breaks at 1/3.
    CHECK(ToricMetric(segment(0, 1), PLFunction({{{-2}, 1}, {{1}, 0}})).N0() == 3);
}

TEST_CASE("weights of the P^2 family") {
    auto phi = ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, Rat(1, 3));
    CHECK(phi.N0() == 3);
    CHECK(phi.weight({0, 0}, 3) == -1);
    CHECK(phi.weight({1, 0}, 3) == 0);
    CHECK(phi.filtration_of(3).w() == -1);
    CHECK(phi.dh_exact() == PPMeasure({{0, Rat(8, 9)}}, {{Rat(-1, 3), 0, UniPoly({Rat(2, 3), 2})}}));
}

TEST_CASE("flag ideal pieces") {
    auto phi = ToricMetric::deformation_to_normal_cone(segment(0, 1), {0}, Rat(1, 2));
    CHECK(phi.flag_ideal_piece(2, 0).size() == 2);
    CHECK(phi.flag_ideal_piece(2, -1).size() == 3);
}

TEST_CASE("components of the P^2 blow-up") {
    auto phi = ToricMetric::deformation_to_normal_cone(simplex(2), {0, 0}, Rat(1, 3));
    ToricPair pair(simplex(2), {});
    auto comps = phi.components(pair);
    REQUIRE(comps.size() == 2);
    for (const auto& e : comps) {
        if (e.trivial()) {
            CHECK(e.mass == Rat(8, 9));
        } else {
            CHECK(e.w == Vec{1, 1});
            CHECK(e.A == 2);
            CHECK(e.mass == Rat(1, 9));
            CHECK(e.phi_value == Rat(-1, 3));
        }
    }
}

TEST_CASE("base change and translation") {
    auto phi = ToricMetric::from_one_ps(segment(0, 1), {Rat(1, 2)}, 0);
    CHECK(phi.N0() == 2);
    CHECK(phi.scale_base_change(2) == ToricMetric::from_one_ps(segment(0, 1), {1}, 0));
    CHECK(phi.translate(1).lambda_max() == Rat(3, 2));
    CHECK_THROWS_AS(phi.scale_base_change(0), InputError);
}

TEST_CASE("triviality") {
    CHECK(ToricMetric::trivial(unit_square(), Rat(2, 3)).is_almost_trivial());
    CHECK(ToricMetric(unit_square(), PLFunction({{{0, 0}, 1}, {{0, 0}, 2}})).is_almost_trivial());
    CHECK_FALSE(ToricMetric::from_one_ps(unit_square(), {1, 0}, 0).is_almost_trivial());
}

TEST_CASE("constructor errors") {
    CHECK_THROWS_AS(ToricMetric::deformation_to_normal_cone(segment(0, 1), {0}, 1), InputError);
    CHECK_THROWS_AS(ToricMetric::deformation_to_normal_cone(segment(0, 1), {Rat(1, 2)}, Rat(1, 4)), InputError);
    CHECK_THROWS_AS(ToricMetric(segment(0, 1), PLFunction({{{0, 0}, 0}})), InputError);
}

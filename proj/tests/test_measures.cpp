#include "doctest.h"
#include "kstab/errors.hpp"
#include "kstab/measure.hpp"

using namespace kstab;

namespace {
PPMeasure flagship_dh() {
    return PPMeasure({{0, Rat(1, 2)}}, {{Rat(-1, 2), 0, UniPoly::constant(1)}});
}
}  // namespace

TEST_CASE("canonical form merges atoms and fuses pieces") {
    PPMeasure a({{1, Rat(1, 4)}, {1, Rat(1, 4)}}, {{0, Rat(1, 2), UniPoly::constant(1)}, {Rat(1, 2), 1, UniPoly::constant(1)}});
    CHECK(a.atoms().size() == 1);
    CHECK(a.atoms()[0].mass == Rat(1, 2));
    CHECK(a.pieces().size() == 1);
    CHECK(a == PPMeasure({{1, Rat(1, 2)}}, {{0, 1, UniPoly::constant(1)}}));
}

TEST_CASE("moments and barycenters") {
    CHECK(PPMeasure::uniform(0, 2).moment(1) == 1);
    CHECK(PPMeasure::uniform(0, 2).moment(2) == Rat(4, 3));
    CHECK(PPMeasure::dirac(Rat(3, 2)).moment(3) == Rat(27, 8));
    CHECK(flagship_dh().barycenter() == Rat(-1, 8));
    CHECK(flagship_dh().is_probability());
}

TEST_CASE("central norms") {
    CHECK(*PPMeasure::uniform(0, 2).central_lp_norm(1).value == Rat(1, 2));
    CHECK(PPMeasure::uniform(0, 2).central_lp_norm(2).power == Rat(1, 3));
    CHECK(*PPMeasure::uniform(0, 2).central_lp_norm(0).value == 1);
    CHECK(*flagship_dh().central_lp_norm(1).value == Rat(9, 64));
    CHECK(flagship_dh().central_lp_norm(2).power == Rat(5, 192));
    CHECK(*flagship_dh().central_lp_norm(0).value == Rat(3, 8));
    for (int p : {0, 1, 2, 3}) CHECK(PPMeasure::dirac(5).central_lp_norm(p).power == 0);
    CHECK_THROWS_AS(PPMeasure::dirac(0, 2).central_lp_norm(1), InputError);
}

TEST_CASE("affine pushforward") {
    CHECK(PPMeasure::uniform(0, 3).pushforward_affine(1, 2) == PPMeasure::uniform(2, 5));
    CHECK(PPMeasure::uniform(0, 1).pushforward_affine(2, 0) == PPMeasure::uniform(0, 2));
    CHECK(PPMeasure::uniform(0, 1).pushforward_affine(-1, 0) == PPMeasure::uniform(-1, 0));
    CHECK(flagship_dh().pushforward_affine(1, Rat(1, 2)) ==
          PPMeasure({{Rat(1, 2), Rat(1, 2)}}, {{0, Rat(1, 2), UniPoly::constant(1)}}));
    CHECK_THROWS_AS(PPMeasure::uniform(0, 1).pushforward_affine(0, 1), InputError);
}

TEST_CASE("tails and support") {
    CHECK(PPMeasure::uniform(0, 2).cdf_tail(1) == Rat(1, 2));
    CHECK(flagship_dh().cdf_tail(0) == Rat(1, 2));
    CHECK(flagship_dh().cdf_tail_open(0) == 0);
    CHECK(flagship_dh().cdf_tail(Rat(-1, 4)) == Rat(3, 4));
    CHECK(flagship_dh().support_min() == Rat(-1, 2));
    CHECK(flagship_dh().support_max() == 0);
    CHECK(flagship_dh().breakpoints() == std::vector<Rat>{Rat(-1, 2), 0});
}

TEST_CASE("tail root concavity") {
    CHECK(check_tail_root_concavity(flagship_dh(), 1).holds);
    PPMeasure p2({{0, Rat(8, 9)}}, {{Rat(-1, 3), 0, UniPoly({Rat(2, 3), 2})}});
    CHECK(check_tail_root_concavity(p2, 2).holds);
    // Decreasing density: the tail (1 - x)^2 is convex.
    CHECK_FALSE(check_tail_root_concavity(PPMeasure({}, {{0, 1, UniPoly({2, -2})}}), 1).holds);
}

TEST_CASE("csv rows") {
    CHECK(flagship_dh().to_csv() == "kind,left_or_location,right_or_mass,coefficients\npiece,-1/2,0,1\natom,0,1/2\n");
}

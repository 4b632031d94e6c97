#include "doctest.h"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/plfunction.hpp"
#include "kstab/polytope.hpp"

using namespace kstab;

TEST_CASE("hulls and volumes") {
    auto sq = LatticePolytope::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {Rat(1, 2), Rat(1, 2)}});
    CHECK(sq.vertices().size() == 4);
    CHECK(sq.facets().size() == 4);
    CHECK(sq.volume() == 1);
    CHECK(simplex(3).volume() == Rat(1, 6));
    CHECK(anticanonical_p2().volume() == Rat(9, 2));
    CHECK(polytope_by_name("p1xp1-anticanonical").volume() == 4);
    auto flat = LatticePolytope::from_points({{0, 0}, {1, 1}, {2, 2}});
    CHECK(flat.affine_dim() == 1);
    CHECK(flat.volume() == 0);
    auto h = LatticePolytope::from_halfspaces(2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -1}});
    REQUIRE(h);
    CHECK(*h == simplex(2));
    CHECK_FALSE(LatticePolytope::from_halfspaces(1, {{{1}, 1}, {{-1}, 0}}));
}

TEST_CASE("lattice points") {
    CHECK(count_lattice_points(segment(0, 1), 3) == 4);
    CHECK(count_lattice_points(simplex(2), 2) == 6);
    CHECK(count_lattice_points(segment(0, 2), 5) == 11);
    CHECK(count_lattice_points(anticanonical_p2(), 1) == 10);
    CHECK(count_lattice_points(unit_square(), 4) == 25);
    CHECK(count_lattice_points(segment(0, Rat(1, 2)), 3) == 2);
}

TEST_CASE("mixed volumes") {
    auto seg = LatticePolytope::from_points({{0, 0}, {1, 0}});
    auto seg2 = LatticePolytope::from_points({{0, 0}, {0, 1}});
    CHECK(mixed_volume({seg, seg2}) == Rat(1, 2));
    CHECK(mixed_volume({seg, seg}) == 0);
    CHECK(mixed_volume({unit_square(), unit_square()}) == 1);
    CHECK(mixed_volume({simplex(3), simplex(3), simplex(3)}) == Rat(1, 6));
    CHECK(minkowski_sum({seg, seg2}, {1, 1}) == unit_square());
    for (long d = 1; d <= 3; ++d) {
        auto tri = LatticePolytope::from_points({{0, 0}, {1, 0}, {1, d}});
        CHECK(mixed_volume({tri, seg}) == Rat(d, 2));
    }
}

TEST_CASE("facet lattice volumes and integrals") {
    for (const auto& f : simplex(2).facets()) CHECK(facet_lattice_volume(simplex(2), f) == 1);
    for (const auto& f : anticanonical_p2().facets()) CHECK(facet_lattice_volume(anticanonical_p2(), f) == 3);
    CHECK_THROWS_AS(facet_lattice_volume(simplex(2), Facet{{1, 1}, 0}), InputError);
    // Diagonal edge of the unit triangle: x + y = 1, lattice length 1; average of x is 1/2.
    CHECK(face_lattice_integral(simplex(2), Facet{{-1, -1}, -1}, {1, 0}, 0) == Rat(1, 2));
    // Supporting line through a vertex only.
    CHECK(face_lattice_integral(simplex(2), Facet{{1, 1}, 0}, {1, 0}, 0) == 0);
    CHECK(face_lattice_integral(segment(0, 2), Facet{{-1}, -2}, {1}, 1) == 3);
}

TEST_CASE("PL functions and subdivisions") {
    PLFunction f({{{0}, 0}, {{1}, Rat(-1, 2)}});
    CHECK(f({0}) == Rat(-1, 2));
    CHECK(f({1}) == 0);
    auto cells = linearity_domains(segment(0, 1), f);
    REQUIRE(cells.size() == 2);
    auto g = PLFunction({{{0}, 0}, {{1}, Rat(-1, 2)}, {{2}, 5}});
    CHECK(g.canonical(segment(0, 1)) == f.canonical(segment(0, 1)));
    CHECK(f.equal_on(segment(0, 1), g));
    CHECK(subdivision_vertices(segment(0, 1), f).size() == 3);
    CHECK_THROWS_AS(PLFunction(std::vector<AffinePiece>{}), InputError);
}

TEST_CASE("superlevel volumes") {
    SuperlevelVolume s(simplex(2), PLFunction({{{0, 0}, 0}, {{1, 1}, Rat(-1, 3)}}));
    CHECK(s(Rat(-1, 3)) == Rat(1, 2));
    CHECK(s(Rat(-1, 6)) == Rat(1, 2) - Rat(1, 72));
    CHECK(s(0) == Rat(1, 2) - Rat(1, 18));
    CHECK(s(Rat(1, 10)) == 0);
    CHECK(superlevel_volume_at(simplex(2), PLFunction({{{0, 0}, 0}, {{1, 1}, Rat(-1, 3)}}), Rat(-1, 6)) ==
          Rat(35, 72));
}

#include "doctest.h"
#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"
#include "kstab/unipoly.hpp"

using namespace kstab;
using namespace kstab::linalg;

TEST_CASE("rationals are canonical") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat::parse("-6/8") == Rat(-3, 4));
    CHECK(Rat::parse(" 7 ") == Rat(7));
    CHECK(Rat(-1, 2).str() == "-1/2");
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat(-7, 2).ceil() == -3);
    CHECK(Rat(2, 3).pow(3) == Rat(8, 27));
    CHECK_THROWS_AS(Rat::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rat::parse("abc"), InputError);
    CHECK(lcm_of_denominators({Rat(1, 4), Rat(5, 6), Rat(2)}) == 12);
}

TEST_CASE("polynomial arithmetic") {
    UniPoly p({1, 1});
    CHECK(p.pow(2) == UniPoly({1, 2, 1}));
    CHECK(p(Rat(1, 2)) == Rat(3, 2));
    CHECK(UniPoly({0, 0, 3}).derivative() == UniPoly({0, 6}));
    CHECK(UniPoly({0, 0, 3}).integrate(0, 1) == 1);
    CHECK(p.compose_affine(2, 1) == UniPoly({2, 2}));
    CHECK((p - p).is_zero());
    CHECK(UniPoly({1, 2, 0}).degree() == 1);
}

TEST_CASE("interpolation") {
    CHECK(interpolate({{0, 1}, {1, 2}, {2, 3}}) == UniPoly({1, 1}));
    CHECK(interpolate({{2, 5}, {4, 9}, {6, 13}}) == UniPoly({1, 2}));
    CHECK(interpolate({{1, 1}, {2, 4}, {3, 9}}) == UniPoly({0, 0, 1}));
    CHECK_THROWS_AS(interpolate({{1, 1}, {1, 2}}), InputError);
}

TEST_CASE("eventual polynomial fits") {
    std::map<std::int64_t, Rat> s;
    for (std::int64_t m = 1; m <= 6; ++m) s[m] = Rat(m + 1);
    auto fit = fit_eventual_polynomial(s, 1, 1);
    CHECK(fit.poly == UniPoly({1, 1}));
    CHECK(fit.stable_from == 1);

    // floor(m/2): polynomial only along even m.
    std::map<std::int64_t, Rat> q;
    for (std::int64_t m = 1; m <= 10; ++m) q[m] = Rat(m / 2);
    CHECK_THROWS_AS(fit_eventual_polynomial(q, 1, 1), NotEventuallyPolynomial);
    std::map<std::int64_t, Rat> even;
    for (std::int64_t m = 2; m <= 10; m += 2) even[m] = Rat(m / 2);
    CHECK(fit_eventual_polynomial(even, 1, 2).poly == UniPoly({0, Rat(1, 2)}));
}

TEST_CASE("linear algebra") {
    CHECK(det({{1, 2}, {3, 4}}) == -2);
    CHECK(rank({{1, 2}, {2, 4}}) == 1);
    auto x = solve({{2, 1}, {1, 3}}, {3, 5});
    REQUIRE(x);
    CHECK(*x == Vec{Rat(4, 5), Rat(7, 5)});
    CHECK_FALSE(solve({{1, 1}, {1, 1}}, {1, 2}));
    CHECK(primitive_integer({Rat(2, 3), Rat(4, 3)}) == Vec{1, 2});
}

#include "doctest.h"
#include "kstab/errors.hpp"
#include "kstab/verify.hpp"

using namespace kstab;

TEST_CASE("worked examples pass") {
    for (auto check : {check_exactnum_examples, check_measure_examples, check_convex_examples,
                       check_filtration_examples, check_testconfig_examples, check_functional_examples}) {
        auto r = check();
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("randomized checks are deterministic") {
    auto a = check_inequalities(5, 6), b = check_inequalities(5, 6);
    CHECK(a.passed);
    CHECK(a.detail == b.detail);
}

TEST_CASE("zero cases pass vacuously") {
    auto all = run_suite("all", SuiteOptions{42, 0});
    for (const auto& r : all) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
    CHECK_THROWS_AS(run_suite("nope", {}), InputError);
}

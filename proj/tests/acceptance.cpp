// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>

#include "kstab/verify.hpp"

using namespace kstab;

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
    const std::vector<std::function<CheckResult()>> criteria = {
        [] { return check_flagship(); },
        [] { return check_dh_formula(); },
        [] { return check_epsilon_exponents(); },
        [] { return check_one_ps(); },
        [=] { return check_inequalities(seed, 200); },
        [=] { return check_cross_routes(seed, 200); },
        [=] { return check_transformation_laws(seed, 50); },
        [=] { return check_rees_oracle(seed, 100); },
        [] { return check_ehrhart(); },
        [] { return check_pair_classification(); },
        [=] { return check_triviality(seed, 200); },
    };
    int failed = 0;
    for (const auto& run : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = run();
        } catch (const std::exception& e) {
            r = {"unnamed", false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (r.passed ? "PASS" : "FAIL") << " [" << std::fixed << std::setprecision(2) << secs << " s] "
                  << r.name << ": " << r.detail << std::endl;
        if (!r.passed) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all 11 criteria passed") << std::endl;
    return failed ? 1 : 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kstab {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 42;
    /// Randomized case count; unset means each check's own default.
    std::optional<std::size_t> cases;
};

const std::vector<std::string>& suite_names();
/// Runs a named suite; throws InputError for an unknown name.
std::vector<CheckResult> run_suite(const std::string& suite, const SuiteOptions& opts);

// Fixed worked examples.
CheckResult check_exactnum_examples();
CheckResult check_measure_examples();
CheckResult check_convex_examples();
CheckResult check_filtration_examples();
CheckResult check_testconfig_examples();
CheckResult check_functional_examples();

// Acceptance criteria.
CheckResult check_flagship();                                          // 1
CheckResult check_dh_formula();                                        // 2
CheckResult check_epsilon_exponents();                                 // 3
CheckResult check_one_ps();                                            // 4
CheckResult check_inequalities(std::uint64_t seed, std::size_t cases);
/// coercivity_scan on catalog pairs: no violations of the unconditional inequalities.
CheckResult check_coercivity_scan(std::uint64_t seed, std::size_t cases); // 5
CheckResult check_cross_routes(std::uint64_t seed, std::size_t cases); // 6
CheckResult check_transformation_laws(std::uint64_t seed, std::size_t cases);  // 7
CheckResult check_rees_oracle(std::uint64_t seed, std::size_t cases);  // 8
CheckResult check_ehrhart();                                           // 9
CheckResult check_pair_classification();                               // 10
CheckResult check_triviality(std::uint64_t seed, std::size_t cases);   // 11

// Further properties.
CheckResult check_measure_properties(std::uint64_t seed, std::size_t cases);
CheckResult check_energy_routes(std::uint64_t seed, std::size_t cases);
CheckResult check_reconstruction(std::uint64_t seed, std::size_t cases);
CheckResult check_dh_convergence(std::uint64_t seed, std::size_t cases);
CheckResult check_extremal_weights(std::uint64_t seed, std::size_t cases);
CheckResult check_error_term_formula(std::uint64_t seed, std::size_t cases);
CheckResult check_ke_identity(std::uint64_t seed, std::size_t cases);
CheckResult check_monotone_chain(std::uint64_t seed, std::size_t cases);
CheckResult check_mixed_volume_properties(std::uint64_t seed, std::size_t cases);
CheckResult check_weight_sums(std::uint64_t seed, std::size_t cases);

}  // namespace kstab

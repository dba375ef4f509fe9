#ifndef EVMIRROR_VALIDATE_HPP
#define EVMIRROR_VALIDATE_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace evmirror::validate {

enum class Check {
    numerov_phase,        ///< finite-difference phase vs closed form, 1e-6 rad
    action_quadrature,    ///< WKB action integral vs closed form, 1e-9
    scale_covariance,     ///< (p_max, z) -> (p_max e^a, z + a) invariance, 1e-12
    energy_conservation,  ///< trajectory energy residual, 1e-10
    numerov_convergence,  ///< fourth-order error ratio in [12, 20]
};

/// All checks, in canonical execution order.
const std::vector<Check>& all_checks();

/// Parse a check name as printed in reports ("numerov-phase", ...).
/// Throws ConfigError for unknown names.
Check check_from_name(const std::string& name);
std::string check_name(Check check);

struct CheckResult {
    std::string name;
    bool passed;
    double measured;   ///< measured deviation (or ratio for convergence)
    double tolerance;  ///< bound it was compared against
    std::string detail;
};

struct SuiteOptions {
    std::vector<double> alphas{0.1, 0.5, 1.0, 3.0, 8.0, 20.0};
    std::vector<double> p_maxes{5.0, 10.0, 50.0};
    std::set<Check> checks{all_checks().begin(), all_checks().end()};

    /// Closed-form phase shift the solver is compared against; replaceable
    /// so tests can verify that a wrong reference is actually caught.
    std::function<double(double alpha, double p_max)> reference_phase;
};

/// Runs the cross-validation matrix and returns one result per check
/// instance. Never aborts early; failures are flagged in the results.
/// Throws ConfigError when `options.checks` is empty.
std::vector<CheckResult> run_suite(const SuiteOptions& options = {});

}  // namespace evmirror::validate

#endif

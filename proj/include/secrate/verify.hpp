#ifndef SECRATE_VERIFY_HPP
#define SECRATE_VERIFY_HPP

/*
 * Built-in cross-validation suite.
 *
 * Every check validates one part of the library against an independent
 * computation: closed-form regions against the generic evaluators, the
 * source-coding region against a split-rate oracle projected by exact
 * elimination, and the simulation kernels against exact information
 * identities.  Checks have stable names so a single one can be selected,
 * and a perturbation hook exists so tests can confirm that the suite
 * actually detects deviations.
 */

#include <string>
#include <vector>

namespace secrate {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    double max_deviation = 0.0;  // worst observed deviation, check-specific
    double tolerance = 0.0;      // pass threshold for max_deviation
    std::string detail;          // human-readable summary
};

struct VerifyOptions {
    // Run only the named check; empty means the whole suite.  Unknown
    // names raise ArgumentError.
    std::string only;
    // Test hook: shifts the first closed-form bound compared by the
    // inner-1 grid check, so callers can confirm failures are reported.
    double inner1_perturbation = 0.0;
};

// Names of all checks, in execution order.
std::vector<std::string> verification_check_names();

// Runs the suite (or one selected check) and returns one entry per check.
std::vector<VerifyCheck> run_verification(const VerifyOptions& options = {});

}  // namespace secrate

#endif  // SECRATE_VERIFY_HPP

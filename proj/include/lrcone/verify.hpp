#pragma once

#include "lrcone/config.hpp"

#include <string>
#include <vector>

namespace lrcone::harness {

/// One verified inequality or identity at one grid point.
/// pass holds iff margin >= -tolerance for the owning check.
struct CheckRow {
    std::string check;
    std::string point;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::vector<CheckRow> rows;
    double seconds = 0.0;

    bool all_passed() const;
};

struct VerificationReport {
    std::vector<CheckRow> rows;
    int failures = 0;
    double min_margin = 0.0;
    double wall_seconds = 0.0;

    bool all_passed() const { return failures == 0; }
};

// Per-module property suites. The fixed-size campaigns run on built-in
// power-law chains; bound options (constant modes, overrides, refinement)
// and seed/workers come from the config.
SuiteResult check_geometry_invariants(const RunConfig& config);
SuiteResult check_model_invariants(const RunConfig& config);
SuiteResult check_quantum_invariants(const RunConfig& config);
SuiteResult check_conjugation_identity(const RunConfig& config);
SuiteResult check_finite_range_domination(const RunConfig& config);
SuiteResult check_duhamel_domination(const RunConfig& config);
SuiteResult check_far_sum_domination(const RunConfig& config);
SuiteResult check_theorem_domination(const RunConfig& config);
SuiteResult check_theorem_smoke_l10(const RunConfig& config);
SuiteResult check_iterated_series(const RunConfig& config);
SuiteResult check_assumption_a_oracles(const RunConfig& config);
SuiteResult check_lightcone_layer(const RunConfig& config);
SuiteResult check_front_properties(const RunConfig& config);
SuiteResult check_determinism(const RunConfig& config);

/// Runs every suite above (the L=10 smoke only at full level) and
/// aggregates the rows.
VerificationReport verify_all(const RunConfig& config);

} // namespace lrcone::harness

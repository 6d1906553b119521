#pragma once

#include "lrcone/bounds.hpp"
#include "lrcone/config.hpp"
#include "lrcone/lightcone.hpp"
#include "lrcone/model.hpp"
#include "lrcone/quantum.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace lrcone::harness {

/// Model-level data every subcommand needs; no Hilbert space yet.
struct AnalyticContext {
    std::shared_ptr<const geometry::MetricSpace> space;
    std::shared_ptr<const model::Interaction> interaction;
    geometry::GrowthCertificate growth;
    geometry::GrowthCertificate annulus; // valid when growth_dimension is integer >= 1
    bool has_annulus = false;
    model::DecayProfile profile = model::DecayProfile::power_law(1.0, 1.0);
    double c0 = 0.0;
    double v = 0.0;
    double kappa = 0.0; // set when the kappa rule is usable (power law, alpha > D)
    bool has_kappa = false;
};

AnalyticContext build_analytic_context(const RunConfig& config);

/// Adds the exact-diagonalization layer on top.
struct QuantumContext {
    quantum::HilbertSpace hilbert;
    std::shared_ptr<const quantum::SpectralHamiltonian> full;
    quantum::Observable observable_a;
    Eigen::MatrixXcd a_embedded;
    geometry::SiteSet x_support;
    double norm_a = 1.0;
    double norm_b = 1.0; // norm of the B template (per-site B kinds all have norm 1)
};

QuantumContext build_quantum_context(const RunConfig& config, const AnalyticContext& analytic);

/// One sweep target: the B observable placed at a definite distance.
struct SweepTarget {
    int site = -1; // -1 for an explicit multi-site B
    double r = 0.0;
};

/// Resolved sweep geometry: targets sorted by (r, site).
std::vector<SweepTarget> resolve_targets(const RunConfig& config, const AnalyticContext& analytic,
                                         const QuantumContext& quantum);

double policy_range(const RunConfig& config, const AnalyticContext& analytic, double r);

struct SweepRow {
    double t = 0.0;
    double r = 0.0;
    double range = 0.0; // R
    double measured = 0.0;
    double truncated = 0.0;
    bounds::BoundBreakdown breakdown;
    double margin = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double c0 = 0.0;
    double v = 0.0;
    geometry::GrowthCertificate growth;
};

/// The full (t, target, mode) grid: exact dynamics plus the bound breakdown,
/// rows ordered by (t, r, R, mode) regardless of the worker schedule.
SweepResult run_sweep(const RunConfig& config);

/// Bound terms only, no dynamics (no Hilbert-space cap applies).
SweepResult run_bound_table(const RunConfig& config);

/// Assumption-A summary for the `model` subcommand.
struct ModelSummary {
    std::vector<std::pair<double, double>> f_table; // (R, empirical f)
    double c0 = 0.0;
    double truncation_cutoff = 1.5;
    double c0_truncated = 0.0; // over terms with diameter < truncation_cutoff
    double v = 0.0;
    geometry::GrowthCertificate growth;
    double profile_c_prime = 0.0; // fitted/selected power-law prefactor, 0 when empirical
};

ModelSummary summarize_model(const RunConfig& config);

/// Light-cone outputs for the `lightcone` subcommand.
struct LightconeResult {
    lightcone::ConeParameters parameters;
    std::vector<std::array<double, 4>> curves; // t, r_max, v_g exact, v_g display form
    std::vector<lightcone::FrontRecord> front;
    lightcone::PowerLawFit fit;
    bool fit_valid = false;
    double epsilon = 0.0;
};

LightconeResult run_lightcone(const RunConfig& config);

} // namespace lrcone::harness

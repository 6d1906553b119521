#pragma once

#include <span>
#include <vector>

namespace lrcone::lightcone {

/**
 * Exponents of the power-law light cone for a D-dimensional model with
 * coupling decay alpha > D:
 *   kappa = (D+1)/(alpha+1), eta = (alpha-D)/(alpha+1), gamma = (D+1)/(alpha-D),
 * satisfying 1/eta = 1 + gamma.
 */
struct ConeParameters {
    double dimension = 1.0; // D
    double alpha = 2.0;
    double kappa = 0.0;
    double eta = 0.0;
    double gamma = 0.0;
    bool kappa_lt_one = false;
};

/// Computes the closed-form exponents; rejects alpha <= dimension.
ConeParameters exponents(double dimension, double alpha);

/// Propagation front r_max(t) = (lambda v t)^(1/eta).
double r_max(double t, double lambda, double v, double eta);

enum class VelocityForm {
    exact_derivative, // d/dt r_max = (1+gamma) (lambda v)^{1/eta} t^gamma
    display,          // (lambda v)^{1/eta} t^gamma, without the (1+gamma) factor
};

double v_g(double t, double lambda, double v, double eta, double gamma,
           VelocityForm form = VelocityForm::exact_derivative);

/// One row of the front-substituted bound terms, kept in log space so large
/// vt never under- or overflows.
struct AsymptoticRow {
    double t = 0.0;
    double log_term1 = 0.0; // log of 2|A||B||X| e^{-(lambda-1)vt}
    double term2 = 0.0;     // |A||B||X| / (lambda v), exactly constant in t
    double log_term3 = 0.0; // log of |A||B||X|^2 e^{-(lambda-1)vt} / ((lambda v)^2 t)
};

struct AsymptoticTable {
    std::vector<AsymptoticRow> rows;
    double expected_decay_rate = 0.0; // (lambda - 1) v, per unit time
    double term2_constant = 0.0;
};

/// Substitutes r = r_max(t) into the three bound terms over a time grid.
AsymptoticTable asymptotic_check(const ConeParameters& params, double lambda, double v,
                                 double norm_a, double norm_b, int size_x,
                                 std::span<const double> t_grid);

/// A commutator-norm sample at one sweep grid point.
struct NormRecord {
    double t = 0.0;
    double r = 0.0;
    double norm = 0.0;
};

/// Extracted front radius at one time; r_star is +infinity when even the
/// largest grid radius stays above threshold (sentinel, excluded from fits).
struct FrontRecord {
    double t = 0.0;
    double r_star = 0.0;
    double epsilon = 0.0;
    bool saturated = false; // r_star equals the largest grid radius
};

/**
 * Smallest grid r with norm(t, r') < epsilon for every grid r' >= r,
 * then a running maximum over t (the front is how far the signal has ever
 * reached). Requires a rectangular (t, r) grid.
 */
std::vector<FrontRecord> empirical_front(std::span<const NormRecord> records, double epsilon);

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0; // rms of log-log residuals
    int points_used = 0;
};

/// Least squares on log r_star vs log t, skipping sentinel, saturated and
/// t <= 0 rows (finite grids truncate the cone).
PowerLawFit fit_power_law(std::span<const FrontRecord> front);

} // namespace lrcone::lightcone

#pragma once

#include "lrcone/geometry.hpp"
#include "lrcone/model.hpp"
#include "lrcone/quantum.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>

namespace lrcone::bounds {

enum class ConstantMode { paper_form, numeric_tight };

const char* to_string(ConstantMode mode);

/// Everything the commutator bounds consume at one grid point.
struct BoundInputs {
    double norm_a = 1.0;
    double norm_b = 1.0;
    int size_x = 1;    // |X|
    double t = 0.0;
    double r = 0.0;    // d(X, Y)
    double range = 1.0; // cutoff R, must be >= 1 for the three-term bound
    double v = 0.0;
    double f_of_range = 0.0;
    geometry::GrowthCertificate growth;                    // ball certificate (C, D)
    bool refined_exponent = false;                         // integer-lattice shell refinement
    geometry::GrowthCertificate annulus_growth{0.0, 0.0};  // (C_a, D-1); required when refined
    double shell_sum = std::numeric_limits<double>::quiet_NaN(); // numeric mode input
    std::optional<double> c2_override;
    bool integrated_time_factor = false; // (e^{vt}-1)/v instead of t e^{vt} in term 3
};

struct BoundBreakdown {
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double total = 0.0;
    ConstantMode constant_mode = ConstantMode::numeric_tight;
    double c2_used = 0.0; // populated in paper form
};

/// v = 2 e C0.
double velocity(double c0);

/// 2 |A| |B| |X| exp(v t - d / R): the finite-range commutator bound.
double finite_range_bound(double norm_a, double norm_b, int size_x, double d_xy, double range,
                          double v, double t);

/// Gamma(d+1, a) = integral_a^inf y^d e^-y dy = d! e^-a sum_{k<=d} a^k/k!.
double upper_incomplete_gamma(int d, double a);

/**
 * Explicit constant for the closed-form shell bound, a deterministic
 * function of a count certificate (C, D): with count(x, rho) <= C (1+rho)^D,
 *
 *   sum_k count(x, r+k+1) e^{-(r+k)/R}
 *     <= C e   * integral_r^inf (2+u)^D e^{-u/R} du        (unit steps, R >= 1)
 *     <= C e^3 * R^{D+1} Gamma(D+1, r/R)                   (u = Rw; 2+Rw <= R(2+w); shift)
 *     <= C e^3 * D! R^{D+1} (1 + r/R)^D e^{-r/R}
 *     <= C D! 2^D e^3 * max(r,R)^D R e^{-r/R},             (R + r <= 2 max(r,R))
 *
 * so c3 = C D! 2^D e^3 and the far-sum constant is c2 = 2 c3.
 */
double c3_constant(double prefactor, int exponent);

/// sup over `sites` (all sites when empty) of
/// sum_k count(x, r+k) e^{-(r+k)/R}, where count is the ball at radius
/// r+k+1, or the unit shell above r+k when `refined` is set. The ball
/// version tails off as a geometric series once balls saturate; the shell
/// version terminates.
double shell_sum_numeric(const geometry::MetricSpace& space, std::span<const int> sites, double r,
                         double range, bool refined = false);

/// c3(C, D) max(r,R)^D R e^{-r/R} for the given certificate.
double shell_sum_closed_form(const geometry::GrowthCertificate& cert, double r, double range);

/**
 * Brute-force value of the n-th iterated series: enumerates every chain
 * Z_1..Z_n of supports with diam < range satisfying Z_1 meets X,
 * Z_{i+1} meets Z_i and Z_n meets Y, accumulating the norm products.
 * Deliberately enumerative (it is the oracle); throws ResourceLimitError
 * past max_chains visited extensions.
 */
double series_a_n(const model::Interaction& interaction, double range, const geometry::SiteSet& x,
                  const geometry::SiteSet& y, int n, long long max_chains = 50'000'000);

/// The instantaneous far-term sum bound:
/// paper form   c2 |A| |X|^2 max(r,R)^D R f(R) e^{vt-r/R},
/// numeric form 2 |A| |X|^2 f(R) e^{vt} S.
double far_sum_bound(const BoundInputs& in, ConstantMode mode);

/**
 * The three-term commutator bound. Term 1 is the finite-range bound,
 * term 2 the near-region tail 4 |A| |B| |X| t g(r) f(R), term 3 the
 * far-region bound in the requested constant mode. Paper form needs an
 * integer growth exponent and falls back to numeric otherwise.
 */
BoundBreakdown theorem_bound(const BoundInputs& in, ConstantMode mode);

/// Adaptive Simpson with interval bisection; absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

struct DuhamelTerms {
    double commutator_term = 0.0; // |[tau_t^short(A), B]|
    double near_integral = 0.0;   // terms meeting the r-neighborhood of X
    double far_integral = 0.0;    // terms missing it
    double total = 0.0;           // commutator_term + 2 |B| (near + far)
};

/// Quadrature evaluation of the Duhamel decomposition's right-hand side,
/// by exact simulation of |[tau_{t-s}^short(A), h_Z^long]|.
DuhamelTerms duhamel_rhs(const quantum::SpectralHamiltonian& h_short,
                         const model::Interaction& long_part, const quantum::HilbertSpace& space,
                         const Eigen::MatrixXcd& a_full, const Eigen::MatrixXcd& b_full,
                         const geometry::SiteSet& x, double r, double t,
                         double quadrature_tol = 1e-6);

} // namespace lrcone::bounds

#pragma once

#include <Eigen/Dense>

namespace lrcone::linalg {

/// max-abs entry of m - m^dagger (0 for exactly Hermitian matrices).
double hermiticity_defect(const Eigen::MatrixXcd& m);

/// Largest singular value. (Anti-)Hermitian matrices go through the
/// self-adjoint eigensolver, everything else through lambda_max(M^dagger M).
double spectral_norm(const Eigen::MatrixXcd& m);

/// Power-iteration fast path for sweep hot loops. Deterministic start
/// vector; throws NumericFailure when max_iters is exhausted.
double spectral_norm_power_iteration(const Eigen::MatrixXcd& m, double tol = 1e-10,
                                     int max_iters = 10000);

} // namespace lrcone::linalg

#include "lrcone/linalg.hpp"

#include "lrcone/errors.hpp"

#include <cmath>
#include <complex>

namespace lrcone::linalg {

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;

    if (m.rows() == m.cols()) {
        if (hermiticity_defect(m) <= 1e-13 * scale) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw NumericFailure("eigensolver did not converge");
            return es.eigenvalues().cwiseAbs().maxCoeff();
        }
        if ((m + m.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
            const std::complex<double> i_unit(0.0, 1.0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(i_unit * m, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) throw NumericFailure("eigensolver did not converge");
            return es.eigenvalues().cwiseAbs().maxCoeff();
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericFailure("eigensolver did not converge");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_norm_power_iteration(const Eigen::MatrixXcd& m, double tol, int max_iters) {
    const long n = m.cols();
    if (n == 0 || m.rows() == 0) return 0.0;
    if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

    // Fixed, mildly irregular start vector so results are reproducible and
    // a zero overlap with the top singular vector is unlikely.
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i)
        v(i) = std::complex<double>(1.0 + 0.001 * static_cast<double>(i % 7),
                                    0.001 * static_cast<double>(i % 5));
    v.normalize();

    double prev = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        const Eigen::VectorXcd w = m * v;
        const double sigma = w.norm();
        if (sigma == 0.0) return 0.0;
        v.noalias() = m.adjoint() * w;
        const double nv = v.norm();
        if (nv == 0.0) return sigma;
        v /= nv;
        if (it > 0 && std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
        prev = sigma;
    }
    throw NumericFailure("spectral norm power iteration did not converge");
}

} // namespace lrcone::linalg

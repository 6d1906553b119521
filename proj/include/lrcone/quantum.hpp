#pragma once

#include "lrcone/geometry.hpp"
#include "lrcone/linalg.hpp"
#include "lrcone/model.hpp"

#include <Eigen/Dense>
#include <vector>

namespace lrcone::quantum {

inline constexpr long kDefaultDimCap = 4096;

/**
 * Tensor-product space over the sites, in site-index order: site 0 is the
 * leftmost (most significant) factor, so an operator embedded at site 0 of
 * a 2-qubit space reads A (x) I. This ordering makes results bit-reproducible.
 */
class HilbertSpace {
public:
    explicit HilbertSpace(std::vector<int> site_dims, long dim_cap = kDefaultDimCap);

    int sites() const { return static_cast<int>(site_dims_.size()); }
    int site_dim(int site) const { return site_dims_[static_cast<size_t>(site)]; }
    const std::vector<int>& site_dims() const { return site_dims_; }
    long dim() const { return dim_; }

private:
    std::vector<int> site_dims_;
    long dim_ = 1;
};

/// A local observable on a support, with the spectral norm cached.
struct Observable {
    geometry::SiteSet support;
    Eigen::MatrixXcd matrix;
    double norm = 0.0;

    static Observable on_sites(geometry::SiteSet support, Eigen::MatrixXcd matrix,
                               const std::vector<int>& local_dims);
    /// axis is one of 'x', 'y', 'z', 'i' (qubit site).
    static Observable pauli(char axis, int site);
};

Eigen::Matrix2cd pauli_matrix(char axis);

/// The full-space matrix acting as the observable on its support and as the
/// identity elsewhere. Preserves the spectral norm.
Eigen::MatrixXcd embed(const Observable& observable, const HilbertSpace& space);

Eigen::MatrixXcd embed_term(const model::InteractionTerm& term, const HilbertSpace& space);

/**
 * A Hermitian matrix held together with its eigendecomposition. One
 * decomposition powers exact Heisenberg evolution at every time; input is
 * symmetrized as (H + H^dagger)/2 with the defect recorded.
 */
class SpectralHamiltonian {
public:
    explicit SpectralHamiltonian(const Eigen::MatrixXcd& h);

    long dim() const { return eigenvalues_.size(); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }
    double symmetrization_defect() const { return symmetrization_defect_; }

    /// e^{itH}
    Eigen::MatrixXcd exp_it(double t) const;

    /// Heisenberg evolution e^{itH} a e^{-itH}.
    Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& a, double t) const;

    /// V^dagger a V: the eigenbasis image reused by HeisenbergEvolution.
    Eigen::MatrixXcd to_eigenbasis(const Eigen::MatrixXcd& a) const;
    Eigen::MatrixXcd evolve_from_eigenbasis(const Eigen::MatrixXcd& a_eig, double t) const;

private:
    Eigen::MatrixXcd matrix_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
    double symmetrization_defect_ = 0.0;
};

/// Caches V^dagger A V so that sweeping many times costs two products each.
class HeisenbergEvolution {
public:
    HeisenbergEvolution(const SpectralHamiltonian& h, const Eigen::MatrixXcd& a);
    Eigen::MatrixXcd at(double t) const;

private:
    const SpectralHamiltonian* ham_;
    Eigen::MatrixXcd a_eigenbasis_;
};

HilbertSpace hilbert_space(const model::Interaction& interaction, long dim_cap = kDefaultDimCap);

/// Sums the embedded terms and eigendecomposes.
SpectralHamiltonian assemble_hamiltonian(const model::Interaction& interaction,
                                         const HilbertSpace& space);

/// Spectral norm of ab - ba.
double commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// e^{itH_short} e^{-itH_full}.
Eigen::MatrixXcd interaction_picture_unitary(const SpectralHamiltonian& h_short,
                                             const SpectralHamiltonian& h_full, double t);

/// | |[tau_t(a), b]| - |[tau_t^short(a), U b U^dagger]| | for the
/// interaction-picture conjugation identity; 0 up to eigensolver noise.
double verify_conjugation_identity(const SpectralHamiltonian& h_short,
                                   const SpectralHamiltonian& h_full, const Eigen::MatrixXcd& a,
                                   const Eigen::MatrixXcd& b, double t);

} // namespace lrcone::quantum

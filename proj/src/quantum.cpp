#include "lrcone/quantum.hpp"

#include "lrcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace lrcone::quantum {

using std::complex;

HilbertSpace::HilbertSpace(std::vector<int> site_dims, long dim_cap) : site_dims_(std::move(site_dims)) {
    if (site_dims_.empty()) throw std::invalid_argument("Hilbert space needs at least one site");
    for (int d : site_dims_) {
        if (d < 1) throw std::invalid_argument("local dimensions must be >= 1");
        if (dim_ > dim_cap / d)
            throw ResourceLimitError("Hilbert dimension exceeds the configured cap of " +
                                     std::to_string(dim_cap));
        dim_ *= d;
    }
}

Eigen::Matrix2cd pauli_matrix(char axis) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    switch (axis) {
        case 'x': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'y': m(0, 1) = complex<double>(0, -1); m(1, 0) = complex<double>(0, 1); break;
        case 'z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case 'i': m.setIdentity(); break;
        default: throw std::invalid_argument("unknown Pauli axis");
    }
    return m;
}

Observable Observable::on_sites(geometry::SiteSet support, Eigen::MatrixXcd matrix,
                                const std::vector<int>& local_dims) {
    if (support.empty()) throw std::invalid_argument("observable needs a nonempty support");
    if (!std::is_sorted(support.begin(), support.end()) ||
        std::adjacent_find(support.begin(), support.end()) != support.end())
        throw std::invalid_argument("observable support must be sorted and duplicate-free");
    long dim = 1;
    for (int s : support) {
        if (s < 0 || s >= static_cast<int>(local_dims.size()))
            throw std::invalid_argument("observable support site out of range");
        dim *= local_dims[static_cast<size_t>(s)];
    }
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw std::invalid_argument("observable matrix dimension does not match its support");
    Observable obs;
    obs.support = std::move(support);
    obs.norm = linalg::spectral_norm(matrix);
    obs.matrix = std::move(matrix);
    return obs;
}

Observable Observable::pauli(char axis, int site) {
    if (site < 0) throw std::invalid_argument("site must be nonnegative");
    Observable obs;
    obs.support = {site};
    obs.matrix = pauli_matrix(axis);
    obs.norm = 1.0;
    return obs;
}

Eigen::MatrixXcd embed(const Observable& observable, const HilbertSpace& space) {
    const int n_sites = space.sites();
    for (int s : observable.support)
        if (s >= n_sites) throw std::invalid_argument("observable support outside the space");

    long obs_dim = 1;
    for (int s : observable.support) obs_dim *= space.site_dim(s);
    if (observable.matrix.rows() != obs_dim)
        throw std::invalid_argument("observable matrix dimension does not match the space");

    // Row/column strides in the full space, site 0 most significant.
    std::vector<long> stride(static_cast<size_t>(n_sites), 1);
    for (int s = n_sites - 2; s >= 0; --s)
        stride[static_cast<size_t>(s)] = stride[static_cast<size_t>(s + 1)] * space.site_dim(s + 1);

    std::vector<int> in_support(static_cast<size_t>(n_sites), 0);
    for (int s : observable.support) in_support[static_cast<size_t>(s)] = 1;
    std::vector<int> rest_sites;
    for (int s = 0; s < n_sites; ++s)
        if (!in_support[static_cast<size_t>(s)]) rest_sites.push_back(s);

    // Full-space offsets of every support configuration (support site order,
    // first support site most significant) and of every rest configuration.
    std::vector<long> support_offset(static_cast<size_t>(obs_dim), 0);
    for (long a = 0; a < obs_dim; ++a) {
        long rem = a;
        for (auto it = observable.support.rbegin(); it != observable.support.rend(); ++it) {
            const int d = space.site_dim(*it);
            support_offset[static_cast<size_t>(a)] += (rem % d) * stride[static_cast<size_t>(*it)];
            rem /= d;
        }
    }
    long rest_dim = 1;
    for (int s : rest_sites) rest_dim *= space.site_dim(s);
    std::vector<long> rest_offset(static_cast<size_t>(rest_dim), 0);
    for (long e = 0; e < rest_dim; ++e) {
        long rem = e;
        for (auto it = rest_sites.rbegin(); it != rest_sites.rend(); ++it) {
            const int d = space.site_dim(*it);
            rest_offset[static_cast<size_t>(e)] += (rem % d) * stride[static_cast<size_t>(*it)];
            rem /= d;
        }
    }

    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (long e = 0; e < rest_dim; ++e) {
        const long base = rest_offset[static_cast<size_t>(e)];
        for (long a = 0; a < obs_dim; ++a)
            for (long b = 0; b < obs_dim; ++b)
                full(base + support_offset[static_cast<size_t>(a)],
                     base + support_offset[static_cast<size_t>(b)]) = observable.matrix(a, b);
    }
    return full;
}

Eigen::MatrixXcd embed_term(const model::InteractionTerm& term, const HilbertSpace& space) {
    Observable obs;
    obs.support = term.support;
    obs.matrix = term.matrix;
    obs.norm = term.norm;
    return embed(obs, space);
}

SpectralHamiltonian::SpectralHamiltonian(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("Hamiltonian must be square");
    symmetrization_defect_ = linalg::hermiticity_defect(h);
    matrix_ = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
    if (solver.info() != Eigen::Success)
        throw NumericFailure("Hamiltonian eigendecomposition did not converge (dim " +
                             std::to_string(h.rows()) + ")");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd SpectralHamiltonian::exp_it(double t) const {
    Eigen::VectorXcd phases(dim());
    for (long k = 0; k < dim(); ++k) phases(k) = std::polar(1.0, t * eigenvalues_(k));
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

Eigen::MatrixXcd SpectralHamiltonian::to_eigenbasis(const Eigen::MatrixXcd& a) const {
    if (a.rows() != dim() || a.cols() != dim())
        throw std::invalid_argument("operator dimension does not match the Hamiltonian");
    return eigenvectors_.adjoint() * a * eigenvectors_;
}

Eigen::MatrixXcd SpectralHamiltonian::evolve_from_eigenbasis(const Eigen::MatrixXcd& a_eig,
                                                             double t) const {
    // (e^{itH} A e^{-itH})_jk in the eigenbasis is A_jk e^{it(E_j - E_k)}.
    Eigen::MatrixXcd w(dim(), dim());
    for (long k = 0; k < dim(); ++k)
        for (long j = 0; j < dim(); ++j)
            w(j, k) = a_eig(j, k) * std::polar(1.0, t * (eigenvalues_(j) - eigenvalues_(k)));
    return eigenvectors_ * w * eigenvectors_.adjoint();
}

Eigen::MatrixXcd SpectralHamiltonian::evolve(const Eigen::MatrixXcd& a, double t) const {
    if (t == 0.0) return a;
    return evolve_from_eigenbasis(to_eigenbasis(a), t);
}

HeisenbergEvolution::HeisenbergEvolution(const SpectralHamiltonian& h, const Eigen::MatrixXcd& a)
    : ham_(&h), a_eigenbasis_(h.to_eigenbasis(a)) {}

Eigen::MatrixXcd HeisenbergEvolution::at(double t) const {
    return ham_->evolve_from_eigenbasis(a_eigenbasis_, t);
}

HilbertSpace hilbert_space(const model::Interaction& interaction, long dim_cap) {
    return HilbertSpace(interaction.local_dims(), dim_cap);
}

SpectralHamiltonian assemble_hamiltonian(const model::Interaction& interaction,
                                         const HilbertSpace& space) {
    if (space.sites() != interaction.space().size())
        throw std::invalid_argument("Hilbert space does not match the interaction's site set");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    for (const auto& term : interaction.terms()) h += embed_term(term, space);
    return SpectralHamiltonian(h);
}

double commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
        throw std::invalid_argument("commutator needs equal square dimensions");
    return linalg::spectral_norm(a * b - b * a);
}

Eigen::MatrixXcd interaction_picture_unitary(const SpectralHamiltonian& h_short,
                                             const SpectralHamiltonian& h_full, double t) {
    if (h_short.dim() != h_full.dim())
        throw std::invalid_argument("Hamiltonian dimensions do not match");
    return h_short.exp_it(t) * h_full.exp_it(-t);
}

double verify_conjugation_identity(const SpectralHamiltonian& h_short,
                                   const SpectralHamiltonian& h_full, const Eigen::MatrixXcd& a,
                                   const Eigen::MatrixXcd& b, double t) {
    const Eigen::MatrixXcd u = interaction_picture_unitary(h_short, h_full, t);
    const double lhs = commutator_norm(h_full.evolve(a, t), b);
    const double rhs = commutator_norm(h_short.evolve(a, t), u * b * u.adjoint());
    return std::abs(lhs - rhs);
}

} // namespace lrcone::quantum

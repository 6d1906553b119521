#pragma once

#include "lrcone/geometry.hpp"

#include <Eigen/Dense>
#include <memory>
#include <utility>
#include <vector>

namespace lrcone::model {

/// One local Hamiltonian term: a Hermitian matrix over its support's
/// local spaces (site-index order), with the spectral norm cached.
struct InteractionTerm {
    geometry::SiteSet support;
    Eigen::MatrixXcd matrix;
    double norm = 0.0;

    /// Validates support/dimension consistency and Hermiticity (1e-12),
    /// computes and caches the spectral norm.
    static InteractionTerm make(geometry::SiteSet support, Eigen::MatrixXcd matrix,
                                const std::vector<int>& local_dims);
};

/// Two-body coupling patterns with unit spectral norm.
enum class CouplingPattern {
    ising, // sigma_z (x) sigma_z
    xy,    // (sigma_x (x) sigma_x + sigma_y (x) sigma_y) / 2
};

/**
 * An interaction family {h_Z}: at most one term per support, every support
 * inside the metric space. Immutable after construction.
 */
class Interaction {
public:
    Interaction(std::shared_ptr<const geometry::MetricSpace> space, std::vector<int> local_dims,
                std::vector<InteractionTerm> terms);

    const geometry::MetricSpace& space() const { return *space_; }
    const std::shared_ptr<const geometry::MetricSpace>& space_ptr() const { return space_; }
    const std::vector<int>& local_dims() const { return local_dims_; }
    const std::vector<InteractionTerm>& terms() const { return terms_; }

    double term_diameter(const InteractionTerm& term) const;

    /// Largest support diameter present (0 when there are no terms).
    double max_diameter() const;

private:
    std::shared_ptr<const geometry::MetricSpace> space_;
    std::vector<int> local_dims_;
    std::vector<InteractionTerm> terms_;
};

/// One term per unordered pair {x,y}, pattern scaled so that
/// |h_{x,y}| = c1 [1 + d(x,y)]^-(alpha + dimension).
Interaction build_power_law_two_body(std::shared_ptr<const geometry::MetricSpace> space, double c1,
                                     double alpha, double dimension,
                                     CouplingPattern pattern = CouplingPattern::ising);

/// sup_x sum over terms containing x with diam >= r_cut of |h_Z|:
/// the tightest admissible tail bound at this cutoff.
double empirical_f(const Interaction& interaction, double r_cut);

/// sup_x sum_y sum_{Z containing x,y} |h_Z|, including the y = x slice.
double compute_C0(const Interaction& interaction);

/// Same quantity over the diam < r_cut truncation of the family.
double compute_C0_truncated(const Interaction& interaction, double r_cut);

/// Splits term-by-term at the diameter cutoff: (diam < r_cut, diam >= r_cut).
std::pair<Interaction, Interaction> decompose(const Interaction& interaction, double r_cut);

/// A decreasing tail-bound profile f(R): either the power law
/// C' (1+R)^-alpha or the model's own empirical tail.
class DecayProfile {
public:
    static DecayProfile power_law(double c_prime, double alpha);
    static DecayProfile empirical(std::shared_ptr<const Interaction> interaction);

    double operator()(double r_cut) const;
    bool is_power_law() const { return interaction_ == nullptr; }
    double c_prime() const { return c_prime_; }
    double alpha() const { return alpha_; }

    /// True iff this profile upper-bounds the model's empirical tail at
    /// every realized diameter (and at 0).
    bool admissible_for(const Interaction& interaction) const;

private:
    DecayProfile() = default;
    double c_prime_ = 0.0;
    double alpha_ = 0.0;
    std::shared_ptr<const Interaction> interaction_;
};

/// Minimal C' making the power-law profile admissible for this model.
double fit_power_law_prefactor(const Interaction& interaction, double alpha);

/// Checks sup_x sum_{Z containing x} |h_Z^(>=R)| <= f(R) for the long part
/// produced by decompose at this cutoff.
bool verify_sr_condition(const Interaction& long_part, const DecayProfile& profile, double r_cut);

} // namespace lrcone::model

#include "lrcone/model.hpp"

#include "lrcone/errors.hpp"
#include "lrcone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lrcone::model {

namespace {

long support_dim(const geometry::SiteSet& support, const std::vector<int>& local_dims) {
    long dim = 1;
    for (int s : support) dim *= local_dims[static_cast<size_t>(s)];
    return dim;
}

Eigen::Matrix4cd pattern_matrix(CouplingPattern pattern) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (pattern) {
        case CouplingPattern::ising:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            m(2, 2) = -1.0;
            m(3, 3) = 1.0;
            break;
        case CouplingPattern::xy:
            m(1, 2) = 1.0;
            m(2, 1) = 1.0;
            break;
    }
    return m;
}

} // namespace

InteractionTerm InteractionTerm::make(geometry::SiteSet support, Eigen::MatrixXcd matrix,
                                      const std::vector<int>& local_dims) {
    if (support.empty()) throw std::invalid_argument("interaction term needs a nonempty support");
    if (!std::is_sorted(support.begin(), support.end()) ||
        std::adjacent_find(support.begin(), support.end()) != support.end())
        throw std::invalid_argument("interaction term support must be sorted and duplicate-free");
    for (int s : support)
        if (s < 0 || s >= static_cast<int>(local_dims.size()))
            throw std::invalid_argument("interaction term support site out of range");

    const long dim = support_dim(support, local_dims);
    if (matrix.rows() != dim || matrix.cols() != dim)
        throw std::invalid_argument("interaction term matrix dimension does not match its support");

    const double scale = matrix.size() == 0 ? 0.0 : matrix.cwiseAbs().maxCoeff();
    if (linalg::hermiticity_defect(matrix) > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("interaction term matrix is not Hermitian");

    InteractionTerm term;
    term.support = std::move(support);
    term.norm = linalg::spectral_norm(matrix);
    term.matrix = std::move(matrix);
    return term;
}

Interaction::Interaction(std::shared_ptr<const geometry::MetricSpace> space,
                         std::vector<int> local_dims, std::vector<InteractionTerm> terms)
    : space_(std::move(space)), local_dims_(std::move(local_dims)), terms_(std::move(terms)) {
    if (!space_) throw std::invalid_argument("interaction needs a metric space");
    if (local_dims_.empty()) local_dims_.assign(static_cast<size_t>(space_->size()), 2);
    if (static_cast<int>(local_dims_.size()) != space_->size())
        throw std::invalid_argument("local dimension count does not match site count");
    for (int d : local_dims_)
        if (d < 1) throw std::invalid_argument("local dimensions must be >= 1");

    std::set<geometry::SiteSet> seen;
    for (const auto& term : terms_) {
        for (int s : term.support)
            if (s >= space_->size()) throw std::invalid_argument("term support site outside the space");
        if (!seen.insert(term.support).second)
            throw std::invalid_argument("duplicate interaction term support");
        if (term.matrix.rows() != support_dim(term.support, local_dims_))
            throw std::invalid_argument("term matrix inconsistent with local dimensions");
    }
}

double Interaction::term_diameter(const InteractionTerm& term) const {
    return space_->set_diameter(term.support);
}

double Interaction::max_diameter() const {
    double dmax = 0.0;
    for (const auto& term : terms_) dmax = std::max(dmax, term_diameter(term));
    return dmax;
}

Interaction build_power_law_two_body(std::shared_ptr<const geometry::MetricSpace> space, double c1,
                                     double alpha, double dimension, CouplingPattern pattern) {
    if (!space) throw std::invalid_argument("power-law builder needs a metric space");
    if (c1 <= 0.0) throw std::invalid_argument("coupling strength must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("power-law exponent alpha must be positive");
    if (dimension <= 0.0) throw std::invalid_argument("dimension must be positive");

    const std::vector<int> local_dims(static_cast<size_t>(space->size()), 2);
    const Eigen::Matrix4cd base = pattern_matrix(pattern);

    std::vector<InteractionTerm> terms;
    for (int x = 0; x < space->size(); ++x) {
        for (int y = x + 1; y < space->size(); ++y) {
            const double scale = c1 * std::pow(1.0 + space->dist(x, y), -(alpha + dimension));
            terms.push_back(InteractionTerm::make({x, y}, scale * base, local_dims));
        }
    }
    return Interaction(std::move(space), local_dims, std::move(terms));
}

double empirical_f(const Interaction& interaction, double r_cut) {
    if (r_cut < 0.0) throw std::invalid_argument("cutoff must be nonnegative");
    double sup = 0.0;
    for (int x = 0; x < interaction.space().size(); ++x) {
        double sum = 0.0;
        for (const auto& term : interaction.terms()) {
            if (!std::binary_search(term.support.begin(), term.support.end(), x)) continue;
            if (interaction.term_diameter(term) >= r_cut) sum += term.norm;
        }
        sup = std::max(sup, sum);
    }
    return sup;
}

namespace {

double c0_of_terms(const Interaction& interaction, double diameter_below) {
    double sup = 0.0;
    for (int x = 0; x < interaction.space().size(); ++x) {
        double sum = 0.0;
        for (const auto& term : interaction.terms()) {
            if (!std::binary_search(term.support.begin(), term.support.end(), x)) continue;
            if (interaction.term_diameter(term) >= diameter_below) continue;
            // sum_y sum_{Z containing x,y} counts each term once per y in Z
            sum += term.norm * static_cast<double>(term.support.size());
        }
        sup = std::max(sup, sum);
    }
    return sup;
}

} // namespace

double compute_C0(const Interaction& interaction) {
    return c0_of_terms(interaction, std::numeric_limits<double>::infinity());
}

double compute_C0_truncated(const Interaction& interaction, double r_cut) {
    return c0_of_terms(interaction, r_cut);
}

std::pair<Interaction, Interaction> decompose(const Interaction& interaction, double r_cut) {
    if (r_cut <= 0.0) throw std::invalid_argument("decomposition cutoff must be positive");
    std::vector<InteractionTerm> short_terms;
    std::vector<InteractionTerm> long_terms;
    for (const auto& term : interaction.terms()) {
        if (interaction.term_diameter(term) < r_cut)
            short_terms.push_back(term);
        else
            long_terms.push_back(term);
    }
    return {Interaction(interaction.space_ptr(), interaction.local_dims(), std::move(short_terms)),
            Interaction(interaction.space_ptr(), interaction.local_dims(), std::move(long_terms))};
}

DecayProfile DecayProfile::power_law(double c_prime, double alpha) {
    if (c_prime <= 0.0) throw std::invalid_argument("power-law profile prefactor must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("power-law profile exponent must be positive");
    DecayProfile p;
    p.c_prime_ = c_prime;
    p.alpha_ = alpha;
    return p;
}

DecayProfile DecayProfile::empirical(std::shared_ptr<const Interaction> interaction) {
    if (!interaction) throw std::invalid_argument("empirical profile needs an interaction");
    DecayProfile p;
    p.interaction_ = std::move(interaction);
    return p;
}

double DecayProfile::operator()(double r_cut) const {
    if (interaction_) return empirical_f(*interaction_, r_cut);
    return c_prime_ * std::pow(1.0 + r_cut, -alpha_);
}

bool DecayProfile::admissible_for(const Interaction& interaction) const {
    // empirical_f is constant between realized term diameters, so checking
    // at each diameter (where the decreasing profile is smallest) suffices.
    std::set<double> cuts{0.0};
    for (const auto& term : interaction.terms()) cuts.insert(interaction.term_diameter(term));
    for (double r : cuts) {
        const double emp = empirical_f(interaction, r);
        if ((*this)(r) < emp - 1e-12 * std::max(1.0, emp)) return false;
    }
    return true;
}

double fit_power_law_prefactor(const Interaction& interaction, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("power-law profile exponent must be positive");
    std::set<double> cuts{0.0};
    for (const auto& term : interaction.terms()) cuts.insert(interaction.term_diameter(term));
    double c = 0.0;
    for (double r : cuts) c = std::max(c, empirical_f(interaction, r) * std::pow(1.0 + r, alpha));
    return c;
}

bool verify_sr_condition(const Interaction& long_part, const DecayProfile& profile, double r_cut) {
    double sup = 0.0;
    for (int x = 0; x < long_part.space().size(); ++x) {
        double sum = 0.0;
        for (const auto& term : long_part.terms())
            if (std::binary_search(term.support.begin(), term.support.end(), x)) sum += term.norm;
        sup = std::max(sup, sum);
    }
    const double f = profile(r_cut);
    return sup <= f + 1e-12 * std::max(1.0, f);
}

} // namespace lrcone::model

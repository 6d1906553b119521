#include "lrcone/sweep.hpp"

#include "lrcone/errors.hpp"
#include "lrcone/linalg.hpp"
#include "lrcone/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace lrcone::harness {

namespace {

std::shared_ptr<const geometry::MetricSpace> build_space(const LatticeConfig& lattice) {
    switch (lattice.kind) {
        case LatticeConfig::Kind::chain:
            return std::make_shared<const geometry::MetricSpace>(
                geometry::MetricSpace::chain(lattice.length));
        case LatticeConfig::Kind::grid:
            return std::make_shared<const geometry::MetricSpace>(
                geometry::MetricSpace::grid(lattice.dimension, lattice.side));
        case LatticeConfig::Kind::custom:
            return std::make_shared<const geometry::MetricSpace>(
                geometry::MetricSpace::custom(lattice.distances, lattice.labels));
    }
    throw std::logic_error("unreachable lattice kind");
}

std::shared_ptr<const model::Interaction> build_interaction(
    const RunConfig& config, std::shared_ptr<const geometry::MetricSpace> space) {
    if (config.interaction.type == InteractionConfig::Type::power_law_two_body) {
        return std::make_shared<const model::Interaction>(model::build_power_law_two_body(
            space, config.interaction.c1, config.interaction.alpha,
            config.lattice.growth_dimension, config.interaction.pattern));
    }
    std::vector<int> dims = config.interaction.local_dims;
    if (dims.empty()) dims.assign(static_cast<size_t>(space->size()), 2);
    std::vector<model::InteractionTerm> terms;
    for (const auto& term : config.interaction.terms) {
        try {
            terms.push_back(model::InteractionTerm::make(geometry::make_site_set(term.support),
                                                         term.matrix, dims));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("interaction.terms", e.what());
        }
    }
    return std::make_shared<const model::Interaction>(space, std::move(dims), std::move(terms));
}

quantum::Observable build_observable(const ObservableConfig& obs, const std::string& field,
                                     const std::vector<int>& local_dims, int default_site) {
    if (obs.is_explicit) {
        try {
            return quantum::Observable::on_sites(geometry::make_site_set(obs.support), obs.matrix,
                                                 local_dims);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(field, e.what());
        }
    }
    const int site = obs.site.value_or(default_site);
    if (site < 0 || site >= static_cast<int>(local_dims.size()))
        throw ConfigError(field + ".site", "site outside the lattice");
    if (local_dims[static_cast<size_t>(site)] != 2)
        throw ConfigError(field + ".kind", "Pauli observables need a qubit site");
    return quantum::Observable::pauli(obs.kind[6], site); // pauli_x -> 'x'
}

} // namespace

AnalyticContext build_analytic_context(const RunConfig& config) {
    AnalyticContext ctx;
    ctx.space = build_space(config.lattice);
    ctx.interaction = build_interaction(config, ctx.space);

    const double d = config.lattice.growth_dimension;
    ctx.growth = geometry::fit_growth_constant(*ctx.space, d);
    if (std::abs(d - std::round(d)) <= 1e-9 && d >= 1.0) {
        ctx.annulus = geometry::fit_annulus_constant(*ctx.space, static_cast<int>(std::round(d)));
        ctx.has_annulus = true;
    }

    if (config.bound.profile.kind == ProfileConfig::Kind::empirical) {
        ctx.profile = model::DecayProfile::empirical(ctx.interaction);
    } else {
        if (config.interaction.type != InteractionConfig::Type::power_law_two_body)
            throw ConfigError("bound.profile", "power_law profiles need a power-law interaction");
        const double c_prime =
            config.bound.profile.c_prime
                ? *config.bound.profile.c_prime
                : model::fit_power_law_prefactor(*ctx.interaction, config.interaction.alpha);
        ctx.profile = model::DecayProfile::power_law(c_prime, config.interaction.alpha);
        if (!ctx.profile.admissible_for(*ctx.interaction))
            throw ConfigError("bound.profile.C_prime",
                              "profile lies below the model's empirical tail");
    }

    ctx.c0 = model::compute_C0(*ctx.interaction);
    ctx.v = bounds::velocity(ctx.c0);

    if (config.interaction.type == InteractionConfig::Type::power_law_two_body &&
        config.interaction.alpha > d) {
        ctx.kappa = (d + 1.0) / (config.interaction.alpha + 1.0);
        ctx.has_kappa = true;
    }
    return ctx;
}

QuantumContext build_quantum_context(const RunConfig& config, const AnalyticContext& analytic) {
    quantum::HilbertSpace hilbert(analytic.interaction->local_dims(), effective_dim_cap(config));
    auto full = std::make_shared<const quantum::SpectralHamiltonian>(
        quantum::assemble_hamiltonian(*analytic.interaction, hilbert));

    quantum::Observable a = build_observable(config.observable_a, "observables.A",
                                             analytic.interaction->local_dims(), 0);
    Eigen::MatrixXcd a_embedded = quantum::embed(a, hilbert);

    QuantumContext ctx{std::move(hilbert), std::move(full), a, std::move(a_embedded),
                       a.support, a.norm, 1.0};
    if (config.observable_b.is_explicit) {
        const quantum::Observable b = build_observable(config.observable_b, "observables.B",
                                                       analytic.interaction->local_dims(), 0);
        ctx.norm_b = b.norm;
    }
    return ctx;
}

std::vector<SweepTarget> resolve_targets(const RunConfig& config, const AnalyticContext& analytic,
                                         const QuantumContext& quantum) {
    const auto& space = *analytic.space;
    const geometry::SiteSet& x = quantum.x_support;
    std::vector<SweepTarget> targets;

    if (config.observable_b.is_explicit) {
        if (config.sweep.r_grid || config.sweep.b_sites)
            throw ConfigError("sweep", "an explicit B observable fixes the target; "
                                       "r_grid/b_sites are not allowed");
        const quantum::Observable b = build_observable(config.observable_b, "observables.B",
                                                       analytic.interaction->local_dims(), 0);
        targets.push_back({-1, space.set_distance(x, b.support)});
        return targets;
    }

    if (config.sweep.b_sites) {
        for (int site : *config.sweep.b_sites)
            targets.push_back({site, space.set_distance(x, {site})});
    } else if (config.sweep.r_grid) {
        for (double r : *config.sweep.r_grid) {
            int found = -1;
            for (int y = 0; y < space.size(); ++y) {
                if (std::abs(space.set_distance(x, {y}) - r) <= 1e-9) {
                    found = y;
                    break;
                }
            }
            if (found < 0)
                throw ConfigError("sweep.r_grid",
                                  "no site at distance " + std::to_string(r) + " from A");
            targets.push_back({found, space.set_distance(x, {found})});
        }
    } else if (config.observable_b.site) {
        const int site = *config.observable_b.site;
        targets.push_back({site, space.set_distance(x, {site})});
    } else {
        // One target per distinct positive distance: the smallest such site.
        std::map<double, int> first_at;
        for (int y = 0; y < space.size(); ++y) {
            const double r = space.set_distance(x, {y});
            if (r > 0.0 && !first_at.count(r)) first_at[r] = y;
        }
        for (const auto& [r, site] : first_at) targets.push_back({site, r});
    }

    std::sort(targets.begin(), targets.end(), [](const SweepTarget& a, const SweepTarget& b) {
        return a.r != b.r ? a.r < b.r : a.site < b.site;
    });
    return targets;
}

double policy_range(const RunConfig& config, const AnalyticContext& analytic, double r) {
    if (config.sweep.policy.kind == RPolicyConfig::Kind::fixed) return config.sweep.policy.value;
    if (!analytic.has_kappa)
        throw ConfigError("sweep.R_policy", "kappa_rule requires alpha > D");
    return std::max(1.0, std::pow(r, analytic.kappa));
}

namespace {

std::vector<bounds::ConstantMode> selected_modes(const RunConfig& config) {
    switch (config.bound.mode) {
        case BoundConfig::ModeSelection::paper_form: return {bounds::ConstantMode::paper_form};
        case BoundConfig::ModeSelection::numeric_tight: return {bounds::ConstantMode::numeric_tight};
        case BoundConfig::ModeSelection::both:
            return {bounds::ConstantMode::paper_form, bounds::ConstantMode::numeric_tight};
    }
    return {bounds::ConstantMode::numeric_tight};
}

/// Terms with equal diameter split together, so a cutoff is characterized
/// by how many distinct term diameters lie below it.
struct SplitKey {
    static int index(const std::vector<double>& diameters, double range) {
        return static_cast<int>(
            std::lower_bound(diameters.begin(), diameters.end(), range) - diameters.begin());
    }
};

std::vector<double> distinct_term_diameters(const model::Interaction& interaction) {
    std::set<double> diams;
    for (const auto& term : interaction.terms()) diams.insert(interaction.term_diameter(term));
    return {diams.begin(), diams.end()};
}

struct Split {
    std::shared_ptr<const model::Interaction> short_part;
    std::shared_ptr<const model::Interaction> long_part;
    std::shared_ptr<const quantum::SpectralHamiltonian> h_short;
    double c0_truncated = 0.0;
};

bounds::BoundInputs make_inputs(const RunConfig& config, const AnalyticContext& analytic,
                                double norm_a, double norm_b, int size_x, double t, double r,
                                double range, double v, double shell_sum) {
    bounds::BoundInputs in;
    in.norm_a = norm_a;
    in.norm_b = norm_b;
    in.size_x = size_x;
    in.t = t;
    in.r = r;
    in.range = range;
    in.v = v;
    in.f_of_range = analytic.profile(range);
    in.growth = analytic.growth;
    in.refined_exponent = config.bound.refined_exponent;
    if (analytic.has_annulus) in.annulus_growth = analytic.annulus;
    in.shell_sum = shell_sum;
    in.c2_override = config.bound.c2_override;
    in.integrated_time_factor = config.bound.integrated_time_factor;
    return in;
}

double sweep_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, long dim) {
    const Eigen::MatrixXcd commutator = a * b - b * a;
    if (dim > 2048) return linalg::spectral_norm_power_iteration(commutator);
    return linalg::spectral_norm(commutator);
}

} // namespace

SweepResult run_sweep(const RunConfig& config) {
    const AnalyticContext analytic = build_analytic_context(config);
    const QuantumContext qctx = build_quantum_context(config, analytic);
    const std::vector<SweepTarget> targets = resolve_targets(config, analytic, qctx);
    const std::vector<bounds::ConstantMode> modes = selected_modes(config);
    const std::vector<double>& t_grid = config.sweep.t_grid;
    const std::vector<double> diameters = distinct_term_diameters(*analytic.interaction);

    // Embed every target's B once.
    std::vector<Eigen::MatrixXcd> b_embedded;
    std::vector<double> b_norms;
    for (const auto& target : targets) {
        quantum::Observable b =
            target.site >= 0
                ? quantum::Observable::pauli(config.observable_b.kind[6], target.site)
                : build_observable(config.observable_b, "observables.B",
                                   analytic.interaction->local_dims(), 0);
        b_norms.push_back(b.norm);
        b_embedded.push_back(quantum::embed(b, qctx.hilbert));
    }

    // One short-Hamiltonian split per distinct cutoff class.
    std::vector<double> ranges;
    std::map<int, Split> splits;
    for (const auto& target : targets) {
        const double range = policy_range(config, analytic, target.r);
        ranges.push_back(range);
        const int key = SplitKey::index(diameters, range);
        if (!splits.count(key)) {
            auto [short_part, long_part] = model::decompose(*analytic.interaction, range);
            Split split;
            split.short_part = std::make_shared<const model::Interaction>(std::move(short_part));
            split.long_part = std::make_shared<const model::Interaction>(std::move(long_part));
            split.h_short = std::make_shared<const quantum::SpectralHamiltonian>(
                quantum::assemble_hamiltonian(*split.short_part, qctx.hilbert));
            split.c0_truncated = model::compute_C0(*split.short_part);
            splits.emplace(key, std::move(split));
        }
    }

    const quantum::HeisenbergEvolution full_evolution(*qctx.full, qctx.a_embedded);
    std::map<int, quantum::HeisenbergEvolution> short_evolutions;
    for (const auto& [key, split] : splits)
        short_evolutions.emplace(key, quantum::HeisenbergEvolution(*split.h_short, qctx.a_embedded));

    SweepResult result;
    result.c0 = analytic.c0;
    result.v = analytic.v;
    result.growth = analytic.growth;
    const size_t rows_per_t = targets.size() * modes.size();
    result.rows.resize(t_grid.size() * rows_per_t);

    const int size_x = static_cast<int>(qctx.x_support.size());
    parallel_for(static_cast<int>(t_grid.size()), config.workers, [&](int ti) {
        const double t = t_grid[static_cast<size_t>(ti)];
        const Eigen::MatrixXcd a_full_t = full_evolution.at(t);
        std::map<int, Eigen::MatrixXcd> a_short_t;

        for (size_t gi = 0; gi < targets.size(); ++gi) {
            const double r = targets[gi].r;
            const double range = ranges[gi];
            const int key = SplitKey::index(diameters, range);
            if (!a_short_t.count(key))
                a_short_t.emplace(key, short_evolutions.at(key).at(t));

            double measured = 0.0;
            double truncated = 0.0;
            try {
                measured = sweep_norm(a_full_t, b_embedded[gi], qctx.hilbert.dim());
                truncated = sweep_norm(a_short_t.at(key), b_embedded[gi], qctx.hilbert.dim());
            } catch (const NumericFailure& e) {
                throw NumericFailure(std::string(e.what()) + " at grid point t=" +
                                     std::to_string(t) + " r=" + std::to_string(r));
            }

            const double v = config.bound.truncated_c0
                                 ? bounds::velocity(splits.at(key).c0_truncated)
                                 : analytic.v;
            const double shell = bounds::shell_sum_numeric(
                *analytic.space, qctx.x_support, r, range, config.bound.refined_exponent);
            const bounds::BoundInputs inputs =
                make_inputs(config, analytic, qctx.norm_a, b_norms[gi], size_x, t, r, range, v,
                            shell);

            for (size_t mi = 0; mi < modes.size(); ++mi) {
                SweepRow row;
                row.t = t;
                row.r = r;
                row.range = range;
                row.measured = measured;
                row.truncated = truncated;
                row.breakdown = bounds::theorem_bound(inputs, modes[mi]);
                row.margin = row.breakdown.total - measured;
                result.rows[(static_cast<size_t>(ti) * targets.size() + gi) * modes.size() + mi] =
                    std::move(row);
            }
        }
    });
    return result;
}

SweepResult run_bound_table(const RunConfig& config) {
    const AnalyticContext analytic = build_analytic_context(config);
    const std::vector<bounds::ConstantMode> modes = selected_modes(config);

    // Targets without the quantum layer: only supports and norms matter.
    quantum::Observable a = build_observable(config.observable_a, "observables.A",
                                             analytic.interaction->local_dims(), 0);
    QuantumContext stub{quantum::HilbertSpace({2}), nullptr, a, {}, a.support, a.norm, 1.0};
    if (config.observable_b.is_explicit)
        stub.norm_b = build_observable(config.observable_b, "observables.B",
                                       analytic.interaction->local_dims(), 0)
                          .norm;
    const std::vector<SweepTarget> targets = resolve_targets(config, analytic, stub);

    SweepResult result;
    result.c0 = analytic.c0;
    result.v = analytic.v;
    result.growth = analytic.growth;

    const int size_x = static_cast<int>(a.support.size());
    for (double t : config.sweep.t_grid) {
        for (const auto& target : targets) {
            const double range = policy_range(config, analytic, target.r);
            const double v = config.bound.truncated_c0
                                 ? bounds::velocity(model::compute_C0_truncated(
                                       *analytic.interaction, range))
                                 : analytic.v;
            const double shell = bounds::shell_sum_numeric(*analytic.space, a.support, target.r,
                                                           range, config.bound.refined_exponent);
            const bounds::BoundInputs inputs = make_inputs(
                config, analytic, a.norm, stub.norm_b, size_x, t, target.r, range, v, shell);
            for (const auto mode : modes) {
                SweepRow row;
                row.t = t;
                row.r = target.r;
                row.range = range;
                row.measured = std::numeric_limits<double>::quiet_NaN();
                row.truncated = std::numeric_limits<double>::quiet_NaN();
                row.breakdown = bounds::theorem_bound(inputs, mode);
                row.margin = std::numeric_limits<double>::quiet_NaN();
                result.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

ModelSummary summarize_model(const RunConfig& config) {
    const AnalyticContext analytic = build_analytic_context(config);
    ModelSummary summary;
    std::set<double> cuts{0.0, 1.0};
    for (const auto& term : analytic.interaction->terms())
        cuts.insert(analytic.interaction->term_diameter(term));
    cuts.insert(analytic.interaction->max_diameter() + 1.0);
    for (double r : cuts) summary.f_table.emplace_back(r, model::empirical_f(*analytic.interaction, r));
    summary.c0 = analytic.c0;
    summary.truncation_cutoff = config.sweep.policy.kind == RPolicyConfig::Kind::fixed
                                    ? config.sweep.policy.value
                                    : 1.5;
    summary.c0_truncated =
        model::compute_C0_truncated(*analytic.interaction, summary.truncation_cutoff);
    summary.v = analytic.v;
    summary.growth = analytic.growth;
    if (config.interaction.type == InteractionConfig::Type::power_law_two_body)
        summary.profile_c_prime =
            model::fit_power_law_prefactor(*analytic.interaction, config.interaction.alpha);
    return summary;
}

LightconeResult run_lightcone(const RunConfig& config) {
    const AnalyticContext analytic = build_analytic_context(config);
    if (!analytic.has_kappa)
        throw ConfigError("interaction",
                          "light-cone exponents need a power-law interaction with alpha > D");

    LightconeResult out;
    out.parameters =
        lightcone::exponents(config.lattice.growth_dimension, config.interaction.alpha);

    for (double t : config.sweep.t_grid) {
        if (t <= 0.0) continue;
        const double rm = lightcone::r_max(t, config.bound.lambda, analytic.v, out.parameters.eta);
        const double vg_exact = lightcone::v_g(t, config.bound.lambda, analytic.v,
                                               out.parameters.eta, out.parameters.gamma,
                                               lightcone::VelocityForm::exact_derivative);
        const double vg_display = lightcone::v_g(t, config.bound.lambda, analytic.v,
                                                 out.parameters.eta, out.parameters.gamma,
                                                 lightcone::VelocityForm::display);
        out.curves.push_back({t, rm, vg_exact, vg_display});
    }

    const SweepResult sweep = run_sweep(config);
    std::vector<lightcone::NormRecord> records;
    std::set<std::pair<double, double>> seen;
    for (const auto& row : sweep.rows) {
        if (!seen.insert({row.t, row.r}).second) continue; // one record per grid point
        records.push_back({row.t, row.r, row.measured});
    }

    const quantum::Observable a = build_observable(config.observable_a, "observables.A",
                                                   analytic.interaction->local_dims(), 0);
    const double norm_b = config.observable_b.is_explicit
                              ? build_observable(config.observable_b, "observables.B",
                                                 analytic.interaction->local_dims(), 0)
                                    .norm
                              : 1.0;
    out.epsilon = config.lightcone_epsilon.value_or(1e-3 * 2.0 * a.norm * norm_b);
    out.front = lightcone::empirical_front(records, out.epsilon);
    try {
        out.fit = lightcone::fit_power_law(out.front);
        out.fit_valid = true;
    } catch (const std::invalid_argument&) {
        out.fit_valid = false;
    }
    return out;
}

} // namespace lrcone::harness

#include "lrcone/verify.hpp"

#include "lrcone/bounds.hpp"
#include "lrcone/emit.hpp"
#include "lrcone/errors.hpp"
#include "lrcone/lightcone.hpp"
#include "lrcone/parallel.hpp"
#include "lrcone/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace lrcone::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

class Checker {
public:
    /// pass iff measured <= bound + tolerance.
    void add(std::string check, std::string point, double measured, double bound,
             double tolerance = 0.0) {
        CheckRow row;
        row.check = std::move(check);
        row.point = std::move(point);
        row.measured = measured;
        row.bound = bound;
        row.margin = bound - measured;
        row.tolerance = tolerance;
        row.pass = row.margin >= -tolerance && std::isfinite(measured);
        rows_.push_back(std::move(row));
    }

    void add_flag(std::string check, std::string point, bool ok) {
        add(std::move(check), std::move(point), ok ? 0.0 : 1.0, 0.0, 0.0);
    }

    SuiteResult finish(Clock::time_point start) {
        SuiteResult result;
        result.rows = std::move(rows_);
        result.seconds = seconds_since(start);
        return result;
    }

private:
    std::vector<CheckRow> rows_;
};

std::string point(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, value] : kv) {
        if (!first) out << " ";
        first = false;
        out << key << "=" << value;
    }
    return out.str();
}

bool quick(const RunConfig& config) {
    return config.verify.level == VerifyConfig::Level::quick;
}

/// Built-in power-law chain used by the fixed-size campaigns; bound and
/// runtime options are inherited from the caller's config.
RunConfig pinned_chain(const RunConfig& base, int length, RPolicyConfig::Kind policy) {
    RunConfig cfg;
    cfg.lattice.kind = LatticeConfig::Kind::chain;
    cfg.lattice.length = length;
    cfg.lattice.growth_dimension = 1.0;
    cfg.interaction.type = InteractionConfig::Type::power_law_two_body;
    cfg.interaction.c1 = 1.0;
    cfg.interaction.alpha = 2.0;
    cfg.observable_a.kind = "pauli_x";
    cfg.observable_a.site = 0;
    cfg.observable_b.kind = "pauli_x";
    cfg.sweep.policy.kind = policy;
    cfg.sweep.policy.value = 1.5;
    cfg.bound = base.bound;
    cfg.bound.mode = BoundConfig::ModeSelection::both;
    cfg.limits = base.limits;
    cfg.seed = base.seed;
    cfg.workers = base.workers;
    cfg.verify = base.verify;
    return cfg;
}

std::vector<double> steps(double start, double stop, double step) {
    std::vector<double> grid;
    for (double v = start; v <= stop + 0.5 * step; v += step) grid.push_back(v);
    return grid;
}

Eigen::MatrixXcd random_matrix(long dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd m(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) m(i, j) = std::complex<double>(normal(rng), normal(rng));
    return m;
}

} // namespace

bool SuiteResult::all_passed() const {
    for (const auto& row : rows)
        if (!row.pass) return false;
    return true;
}

SuiteResult check_geometry_invariants(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const AnalyticContext ctx = build_analytic_context(config);
    const auto& space = *ctx.space;

    for (int x = 0; x < space.size(); ++x)
        for (double r : space.realized_distances())
            checker.add("geometry.ball_growth", point({{"x", x}, {"r", r}}),
                        space.ball_count(x, r), ctx.growth.g(r), 1e-9);

    const geometry::SiteSet x0{0};
    const geometry::SiteSet pair = space.size() > 1 ? geometry::SiteSet{0, space.size() - 1} : x0;
    for (const auto& x_set : {x0, pair}) {
        geometry::SiteSet previous;
        for (double r : space.realized_distances()) {
            const auto nbhd = space.neighborhood(x_set, r);
            checker.add("geometry.neighborhood_growth",
                        point({{"size", double(x_set.size())}, {"r", r}}),
                        static_cast<double>(nbhd.size()),
                        static_cast<double>(x_set.size()) * ctx.growth.g(r), 1e-9);
            if (!previous.empty())
                checker.add_flag("geometry.neighborhood_monotone", point({{"r", r}}),
                                 std::includes(nbhd.begin(), nbhd.end(), previous.begin(),
                                               previous.end()));
            previous = nbhd;
        }
        checker.add_flag("geometry.neighborhood_zero", point({{"size", double(x_set.size())}}),
                         space.neighborhood(x_set, 0.0) == x_set);
    }

    const int n = std::min(space.size(), 6);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const geometry::SiteSet xs{a, std::min(a + 1, space.size() - 1)};
            const geometry::SiteSet ys{b};
            const bool intersect = std::binary_search(xs.begin(), xs.end(), b);
            const bool zero = space.set_distance(geometry::make_site_set(xs), ys) == 0.0;
            checker.add_flag("geometry.distance_zero_iff_intersect",
                             point({{"a", a}, {"b", b}}), intersect == zero);
        }
    }
    return checker.finish(start);
}

SuiteResult check_model_invariants(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const AnalyticContext ctx = build_analytic_context(config);
    const auto& interaction = *ctx.interaction;

    std::set<double> cut_set{0.0};
    for (const auto& term : interaction.terms()) {
        const double d = interaction.term_diameter(term);
        cut_set.insert(d);
        cut_set.insert(d + 0.5);
    }
    const std::vector<double> cuts(cut_set.begin(), cut_set.end());

    for (size_t i = 1; i < cuts.size(); ++i)
        checker.add("model.empirical_f_monotone", point({{"R", cuts[i]}}),
                    model::empirical_f(interaction, cuts[i]),
                    model::empirical_f(interaction, cuts[i - 1]), 1e-12);
    checker.add("model.empirical_f_vanishes", point({{"R", interaction.max_diameter() + 1.0}}),
                model::empirical_f(interaction, interaction.max_diameter() + 1.0), 0.0);
    checker.add("model.c0_dominates_f0", "R=0", model::empirical_f(interaction, 0.0), ctx.c0,
                1e-12);

    for (double r : cuts) {
        if (r <= 0.0) continue;
        const auto [short_part, long_part] = model::decompose(interaction, r);
        bool partitioned = short_part.terms().size() + long_part.terms().size() ==
                           interaction.terms().size();
        std::set<geometry::SiteSet> supports;
        for (const auto& term : short_part.terms()) supports.insert(term.support);
        for (const auto& term : long_part.terms())
            if (!supports.insert(term.support).second) partitioned = false;
        for (const auto& term : interaction.terms())
            if (!supports.count(term.support)) partitioned = false;
        for (const auto& term : short_part.terms())
            if (!(short_part.term_diameter(term) < r)) partitioned = false;
        for (const auto& term : long_part.terms())
            if (!(long_part.term_diameter(term) >= r)) partitioned = false;
        checker.add_flag("model.decompose_partition", point({{"R", r}}), partitioned);

        const auto profile = model::DecayProfile::empirical(ctx.interaction);
        checker.add_flag("model.sr_condition", point({{"R", r}}),
                         model::verify_sr_condition(long_part, profile, r));
    }

    if (config.interaction.type == InteractionConfig::Type::power_law_two_body &&
        config.lattice.kind == LatticeConfig::Kind::chain) {
        // Dominating tail of the infinite chain: f(R) <= 2 C1 sum_{d>=ceil(R)} (1+d)^-(alpha+1).
        for (double r : cuts) {
            double tail = 0.0;
            for (int d = static_cast<int>(std::ceil(r)); d <= config.lattice.length + 16; ++d)
                tail += std::pow(1.0 + d, -(config.interaction.alpha + 1.0));
            checker.add("model.power_law_tail", point({{"R", r}}),
                        model::empirical_f(interaction, r),
                        2.0 * config.interaction.c1 * tail, 1e-12);
        }
    }
    return checker.finish(start);
}

SuiteResult check_quantum_invariants(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const RunConfig pinned = pinned_chain(config, 4, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);
    const quantum::HilbertSpace hilbert(ctx.interaction->local_dims(), config.limits.dim_cap);
    const quantum::SpectralHamiltonian h =
        quantum::assemble_hamiltonian(*ctx.interaction, hilbert);

    std::mt19937_64 rng(config.seed);
    const int samples = quick(config) ? 2 : 4;
    for (int k = 0; k < samples; ++k) {
        const Eigen::MatrixXcd a = random_matrix(hilbert.dim(), rng);
        const Eigen::MatrixXcd b = random_matrix(hilbert.dim(), rng);
        const double norm_a = linalg::spectral_norm(a);
        const double norm_b = linalg::spectral_norm(b);
        for (double t : {0.3, 1.7}) {
            checker.add("quantum.unitarity", point({{"sample", k}, {"t", t}}),
                        std::abs(linalg::spectral_norm(h.evolve(a, t)) - norm_a), 0.0,
                        1e-9 * norm_a);
            const double s = 0.45;
            checker.add("quantum.group_law", point({{"sample", k}, {"t", t}}),
                        linalg::spectral_norm(h.evolve(h.evolve(a, s), t) - h.evolve(a, s + t)),
                        0.0, 1e-9 * norm_a);
            checker.add("quantum.generic_commutator_bound", point({{"sample", k}, {"t", t}}),
                        quantum::commutator_norm(h.evolve(a, t), b),
                        2.0 * norm_a * norm_b + 1e-9, 0.0);
        }
    }
    return checker.finish(start);
}

SuiteResult check_conjugation_identity(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const std::vector<int> lengths = quick(config) ? std::vector<int>{4, 5} : std::vector<int>{4, 5, 6};
    for (int length : lengths) {
        const RunConfig pinned = pinned_chain(config, length, RPolicyConfig::Kind::fixed);
        const AnalyticContext ctx = build_analytic_context(pinned);
        const quantum::HilbertSpace hilbert(ctx.interaction->local_dims(), config.limits.dim_cap);
        const quantum::SpectralHamiltonian h_full =
            quantum::assemble_hamiltonian(*ctx.interaction, hilbert);
        const Eigen::MatrixXcd a =
            quantum::embed(quantum::Observable::pauli('x', 0), hilbert);
        const Eigen::MatrixXcd b =
            quantum::embed(quantum::Observable::pauli('z', length - 1), hilbert);
        for (double range : {1.5, 2.5}) {
            const auto [short_part, long_part] = model::decompose(*ctx.interaction, range);
            const quantum::SpectralHamiltonian h_short =
                quantum::assemble_hamiltonian(short_part, hilbert);
            for (double t : {0.25, 0.5, 1.0, 2.0}) {
                const double residual =
                    quantum::verify_conjugation_identity(h_short, h_full, a, b, t);
                checker.add("quantum.conjugation_identity",
                            point({{"L", length}, {"R", range}, {"t", t}}), residual, 0.0, 1e-9);
            }
        }
    }
    return checker.finish(start);
}

SuiteResult check_finite_range_domination(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const int length = quick(config) ? 6 : 8;
    const double range = 1.5;
    const RunConfig pinned = pinned_chain(config, length, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);
    const quantum::HilbertSpace hilbert(ctx.interaction->local_dims(), config.limits.dim_cap);

    const auto [short_part, long_part] = model::decompose(*ctx.interaction, range);
    const quantum::SpectralHamiltonian h_short = quantum::assemble_hamiltonian(short_part, hilbert);
    const Eigen::MatrixXcd a = quantum::embed(quantum::Observable::pauli('x', 0), hilbert);
    const quantum::HeisenbergEvolution evolution(h_short, a);

    std::vector<Eigen::MatrixXcd> b_embedded;
    for (int site = 1; site < length; ++site)
        b_embedded.push_back(quantum::embed(quantum::Observable::pauli('x', site), hilbert));

    const std::vector<double> t_grid = steps(0.0, 2.0, 0.1);
    std::vector<std::vector<CheckRow>> rows_by_t(t_grid.size());
    parallel_for(static_cast<int>(t_grid.size()), config.workers, [&](int ti) {
        const double t = t_grid[static_cast<size_t>(ti)];
        const Eigen::MatrixXcd a_t = evolution.at(t);
        Checker local;
        for (int site = 1; site < length; ++site) {
            const double measured = quantum::commutator_norm(a_t, b_embedded[site - 1]);
            const double bound =
                bounds::finite_range_bound(1.0, 1.0, 1, site, range, ctx.v, t);
            local.add("bounds.finite_range_domination", point({{"t", t}, {"d", site}}),
                      measured, bound);
        }
        rows_by_t[static_cast<size_t>(ti)] = local.finish(start).rows;
    });
    Checker merged;
    SuiteResult result = merged.finish(start);
    for (auto& rows : rows_by_t)
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    result.seconds = seconds_since(start);
    return result;
}

SuiteResult check_duhamel_domination(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const int length = 6;
    const double range = 1.5;
    const RunConfig pinned = pinned_chain(config, length, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);
    const quantum::HilbertSpace hilbert(ctx.interaction->local_dims(), config.limits.dim_cap);

    const quantum::SpectralHamiltonian h_full =
        quantum::assemble_hamiltonian(*ctx.interaction, hilbert);
    const auto [short_part, long_part] = model::decompose(*ctx.interaction, range);
    const quantum::SpectralHamiltonian h_short = quantum::assemble_hamiltonian(short_part, hilbert);
    const Eigen::MatrixXcd a = quantum::embed(quantum::Observable::pauli('x', 0), hilbert);
    const Eigen::MatrixXcd b =
        quantum::embed(quantum::Observable::pauli('z', length - 1), hilbert);
    const quantum::HeisenbergEvolution full_evolution(h_full, a);

    for (double r : {1.0, 2.0}) {
        for (double t : {0.5, 1.0}) {
            const double measured = quantum::commutator_norm(full_evolution.at(t), b);
            const auto rhs = bounds::duhamel_rhs(h_short, long_part, hilbert, a, b, {0}, r, t,
                                                 config.limits.quadrature_tol);
            checker.add("bounds.duhamel_domination", point({{"r", r}, {"t", t}}), measured,
                        rhs.total, 1e-5);
        }
    }
    return checker.finish(start);
}

SuiteResult check_far_sum_domination(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const int length = 6;
    const double range = 1.5;
    const RunConfig pinned = pinned_chain(config, length, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);
    const quantum::HilbertSpace hilbert(ctx.interaction->local_dims(), config.limits.dim_cap);

    const auto [short_part, long_part] = model::decompose(*ctx.interaction, range);
    const quantum::SpectralHamiltonian h_short = quantum::assemble_hamiltonian(short_part, hilbert);
    const Eigen::MatrixXcd a = quantum::embed(quantum::Observable::pauli('x', 0), hilbert);
    const quantum::HeisenbergEvolution evolution(h_short, a);
    const geometry::SiteSet x{0};

    // Gamma-function inequality used by the closed-form constants.
    for (int d = 0; d <= 6; ++d)
        for (double arg : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            double factorial = 1.0;
            for (int k = 2; k <= d; ++k) factorial *= k;
            const double rhs = factorial * std::pow(1.0 + arg, d) * std::exp(-arg);
            checker.add("bounds.gamma_inequality", point({{"D", d}, {"a", arg}}),
                        bounds::upper_incomplete_gamma(d, arg), rhs, 1e-12 * rhs);
        }

    for (double r : {1.0, 2.0}) {
        const geometry::SiteSet x_r = ctx.space->neighborhood(x, r);
        for (double t : {0.5, 1.0}) {
            const Eigen::MatrixXcd a_t = evolution.at(t);
            double brute = 0.0;
            for (const auto& term : long_part.terms()) {
                const bool meets = std::any_of(term.support.begin(), term.support.end(),
                                               [&](int s) {
                                                   return std::binary_search(x_r.begin(),
                                                                             x_r.end(), s);
                                               });
                if (!meets)
                    brute += quantum::commutator_norm(a_t, quantum::embed_term(term, hilbert));
            }

            bounds::BoundInputs in;
            in.norm_a = 1.0;
            in.norm_b = 1.0;
            in.size_x = 1;
            in.t = t;
            in.r = r;
            in.range = range;
            in.v = ctx.v;
            in.f_of_range = ctx.profile(range);
            in.growth = ctx.growth;
            in.refined_exponent = config.bound.refined_exponent;
            in.annulus_growth = ctx.annulus;
            in.shell_sum = bounds::shell_sum_numeric(*ctx.space, x, r, range,
                                                     config.bound.refined_exponent);
            in.c2_override = config.bound.c2_override;

            const double numeric = bounds::far_sum_bound(in, bounds::ConstantMode::numeric_tight);
            const double paper = bounds::far_sum_bound(in, bounds::ConstantMode::paper_form);
            checker.add("bounds.far_sum_domination",
                        point({{"r", r}, {"t", t}}) + " mode=numeric_tight", brute, numeric);
            checker.add("bounds.far_sum_domination",
                        point({{"r", r}, {"t", t}}) + " mode=paper_form", brute, paper);
            checker.add("bounds.far_sum_mode_ordering", point({{"r", r}, {"t", t}}), numeric,
                        paper);
        }
    }

    // Shell-sum ordering: the numeric sum never exceeds its closed form.
    for (double r : {0.0, 1.0, 2.0, 4.0})
        for (double range2 : {1.0, 1.5, 3.0}) {
            checker.add("bounds.shell_sum_ordering", point({{"r", r}, {"R", range2}}),
                        bounds::shell_sum_numeric(*ctx.space, {}, r, range2, false),
                        bounds::shell_sum_closed_form(ctx.growth, r, range2));
            checker.add("bounds.shell_sum_ordering",
                        point({{"r", r}, {"R", range2}}) + " refined",
                        bounds::shell_sum_numeric(*ctx.space, {}, r, range2, true),
                        bounds::shell_sum_closed_form(ctx.annulus, r, range2));
        }
    return checker.finish(start);
}

namespace {

void theorem_rows(Checker& checker, const RunConfig& sweep_config, const std::string& label) {
    const SweepResult result = run_sweep(sweep_config);
    for (const auto& row : result.rows) {
        const std::string where = label + " " +
                                  point({{"t", row.t}, {"r", row.r}, {"R", row.range}}) +
                                  " mode=" + bounds::to_string(row.breakdown.constant_mode);
        checker.add("theorem_bound.domination", where, row.measured, row.breakdown.total);
        checker.add("theorem_bound.term1_truncated", where, row.truncated, row.breakdown.term1);
    }
    // Mode ordering holds pointwise on the shared grid: rows alternate
    // paper_form, numeric_tight per grid point.
    for (size_t i = 0; i + 1 < result.rows.size(); i += 2) {
        const auto& paper = result.rows[i];
        const auto& numeric = result.rows[i + 1];
        checker.add("theorem_bound.mode_ordering",
                    label + " " + point({{"t", paper.t}, {"r", paper.r}, {"R", paper.range}}),
                    numeric.breakdown.total, paper.breakdown.total);
    }
}

} // namespace

SuiteResult check_theorem_domination(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const std::vector<int> lengths = quick(config) ? std::vector<int>{6} : std::vector<int>{6, 8};
    for (int length : lengths) {
        for (auto policy : {RPolicyConfig::Kind::fixed, RPolicyConfig::Kind::kappa_rule}) {
            RunConfig sweep_config = pinned_chain(config, length, policy);
            sweep_config.sweep.t_grid = steps(0.0, 2.0, 0.1);
            sweep_config.bound.mode = BoundConfig::ModeSelection::both;
            const std::string label =
                "L=" + std::to_string(length) +
                (policy == RPolicyConfig::Kind::fixed ? " policy=fixed" : " policy=kappa_rule");
            theorem_rows(checker, sweep_config, label);
        }
    }
    return checker.finish(start);
}

SuiteResult check_theorem_smoke_l10(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    RunConfig sweep_config = pinned_chain(config, 10, RPolicyConfig::Kind::fixed);
    sweep_config.sweep.t_grid = {0.5, 1.0};
    sweep_config.sweep.b_sites = std::vector<int>{3, 6, 9};
    sweep_config.limits.dim_cap = std::max(sweep_config.limits.dim_cap, 1024L);
    theorem_rows(checker, sweep_config, "L=10 policy=fixed");
    return checker.finish(start);
}

SuiteResult check_iterated_series(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;

    // Worked 3-site example: exact rational values.
    {
        const RunConfig pinned = pinned_chain(config, 3, RPolicyConfig::Kind::fixed);
        const AnalyticContext ctx = build_analytic_context(pinned);
        const auto a1 = bounds::series_a_n(*ctx.interaction, 2.5, {0}, {2}, 1);
        const auto a1_zero = bounds::series_a_n(*ctx.interaction, 1.5, {0}, {2}, 1);
        const auto a2 = bounds::series_a_n(*ctx.interaction, 1.5, {0}, {2}, 2);
        checker.add("bounds.series_worked_example", "n=1 R=2.5", std::abs(a1 - 1.0 / 27.0), 0.0,
                    1e-12);
        checker.add("bounds.series_worked_example", "n=1 R=1.5", std::abs(a1_zero), 0.0, 0.0);
        checker.add("bounds.series_worked_example", "n=2 R=1.5", std::abs(a2 - 1.0 / 64.0), 0.0,
                    1e-12);
    }

    const int length = quick(config) ? 4 : 5;
    const RunConfig pinned = pinned_chain(config, length, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);
    const std::vector<geometry::SiteSet> x_sets{{0}, {0, 1}};
    for (const auto& x : x_sets) {
        const geometry::SiteSet y{length - 1};
        const double d_xy = ctx.space->set_distance(x, y);
        for (double range : {1.5, 2.5, 3.5}) {
            const double c0 = model::compute_C0(*ctx.interaction);
            for (int n = 1; n <= 3; ++n) {
                const double value = bounds::series_a_n(*ctx.interaction, range, x, y, n,
                                                        config.limits.max_chain_enumeration);
                checker.add("bounds.series_c0_bound",
                            point({{"n", n}, {"R", range}, {"|X|", double(x.size())}}), value,
                            std::pow(c0, n) * static_cast<double>(x.size()), 1e-12);
                if (n * range < d_xy)
                    checker.add("bounds.series_vanishing",
                                point({{"n", n}, {"R", range}}), value, 0.0, 0.0);
            }
        }
    }
    return checker.finish(start);
}

SuiteResult check_assumption_a_oracles(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    const RunConfig pinned = pinned_chain(config, 5, RPolicyConfig::Kind::fixed);
    const AnalyticContext ctx = build_analytic_context(pinned);

    // Independent re-evaluation straight from the definitions: two-body
    // norms are c1 (1+|x-y|)^-(alpha+D) on the chain, nothing shared with
    // the model module.
    const int length = 5;
    const double exponent = 3.0; // alpha + D = 2 + 1
    auto pair_norm = [&](int i, int j) { return std::pow(1.0 + std::abs(i - j), -exponent); };

    auto raw_f = [&](double r_cut) {
        double sup = 0.0;
        for (int x = 0; x < length; ++x) {
            double sum = 0.0;
            for (int i = 0; i < length; ++i)
                for (int j = i + 1; j < length; ++j)
                    if ((i == x || j == x) && std::abs(i - j) >= r_cut) sum += pair_norm(i, j);
            sup = std::max(sup, sum);
        }
        return sup;
    };
    auto raw_c0 = [&] {
        double sup = 0.0;
        for (int x = 0; x < length; ++x) {
            double sum = 0.0;
            for (int y = 0; y < length; ++y)
                for (int i = 0; i < length; ++i)
                    for (int j = i + 1; j < length; ++j)
                        if ((i == x || j == x) && (i == y || j == y)) sum += pair_norm(i, j);
            sup = std::max(sup, sum);
        }
        return sup;
    };

    checker.add("model.assumption_a_oracles", "f(2) vs brute force",
                std::abs(model::empirical_f(*ctx.interaction, 2.0) - raw_f(2.0)), 0.0, 1e-12);
    checker.add("model.assumption_a_oracles", "f(0) vs brute force",
                std::abs(model::empirical_f(*ctx.interaction, 0.0) - raw_f(0.0)), 0.0, 1e-12);
    checker.add("model.assumption_a_oracles", "C0 vs brute force",
                std::abs(model::compute_C0(*ctx.interaction) - raw_c0()), 0.0, 1e-12);
    checker.add("model.assumption_a_oracles", "f(2) = 2/27",
                std::abs(model::empirical_f(*ctx.interaction, 2.0) - 2.0 / 27.0), 0.0, 1e-12);
    checker.add("model.assumption_a_oracles", "C0 = 35/54",
                std::abs(model::compute_C0(*ctx.interaction) - 35.0 / 54.0), 0.0, 1e-12);
    return checker.finish(start);
}

SuiteResult check_lightcone_layer(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;

    for (double dim : {1.0, 2.0, 3.0}) {
        for (double delta = 0.5; delta <= 10.0; delta += 0.5) {
            const auto p = lightcone::exponents(dim, dim + delta);
            checker.add("lightcone.exponent_identity",
                        point({{"D", dim}, {"alpha", dim + delta}}),
                        std::abs(1.0 / p.eta - (1.0 + p.gamma)), 0.0, 1e-12);
            checker.add_flag("lightcone.kappa_below_one",
                             point({{"D", dim}, {"alpha", dim + delta}}), p.kappa_lt_one);
        }
    }

    // Fitting the analytic front recovers its own exponent.
    {
        const auto p = lightcone::exponents(1.0, 2.0);
        const RunConfig pinned = pinned_chain(config, 5, RPolicyConfig::Kind::fixed);
        const AnalyticContext ctx = build_analytic_context(pinned);
        std::vector<lightcone::FrontRecord> front;
        for (double t = 1.0; t <= 100.0; t *= 1.3) {
            lightcone::FrontRecord rec;
            rec.t = t;
            rec.r_star = lightcone::r_max(t, 4.0, ctx.v, p.eta);
            rec.epsilon = 1e-3;
            front.push_back(rec);
        }
        const auto fit = lightcone::fit_power_law(front);
        checker.add("lightcone.rmax_fit", "t in [1,100]",
                    std::abs(fit.exponent - (1.0 + p.gamma)), 0.0, 1e-6);

        // r_max convexity: increasing increments for gamma > 0.
        double prev = lightcone::r_max(1.0, 4.0, ctx.v, p.eta);
        double prev_step = 0.0;
        for (double t = 2.0; t <= 20.0; t += 1.0) {
            const double cur = lightcone::r_max(t, 4.0, ctx.v, p.eta);
            const double step = cur - prev;
            if (prev_step > 0.0)
                checker.add("lightcone.rmax_convex", point({{"t", t}}), prev_step, step);
            prev_step = step;
            prev = cur;
        }

        // Substituted bound terms: units 1 and 3 decay at rate (lambda-1) v.
        const double lambda = 4.0;
        std::vector<double> t_grid;
        for (double t = 10.0; t <= 20.0; t += 1.0) t_grid.push_back(t);
        const auto table = lightcone::asymptotic_check(p, lambda, ctx.v, 1.0, 1.0, 1, t_grid);
        const double rate = table.expected_decay_rate;
        for (size_t i = 1; i < table.rows.size(); ++i) {
            const double dt = table.rows[i].t - table.rows[i - 1].t;
            const double rate1 = -(table.rows[i].log_term1 - table.rows[i - 1].log_term1) / dt;
            const double rate3 = -(table.rows[i].log_term3 - table.rows[i - 1].log_term3) / dt;
            checker.add("lightcone.asymptotic_decay",
                        point({{"t", table.rows[i].t}}) + " term=1", std::abs(rate1 - rate), 0.0,
                        0.01 * rate);
            checker.add("lightcone.asymptotic_decay",
                        point({{"t", table.rows[i].t}}) + " term=3", std::abs(rate3 - rate), 0.0,
                        0.01 * rate);
            checker.add("lightcone.asymptotic_term2_constant",
                        point({{"t", table.rows[i].t}}),
                        std::abs(table.rows[i].term2 - table.term2_constant), 0.0, 0.0);
        }
        checker.add("lightcone.asymptotic_term2_limit", "lambda=4",
                    std::abs(table.term2_constant - 1.0 / (lambda * ctx.v)), 0.0, 1e-15);
    }
    return checker.finish(start);
}

SuiteResult check_front_properties(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;

    // Synthetic spreading signal: norm(t, r) = 2 exp(r_front(t) - r).
    std::vector<lightcone::NormRecord> records;
    for (double t = 0.5; t <= 4.0; t += 0.5)
        for (double r = 1.0; r <= 12.0; r += 1.0)
            records.push_back({t, r, 2.0 * std::exp(1.5 * t - r)});

    const auto loose = lightcone::empirical_front(records, 1e-2);
    const auto tight = lightcone::empirical_front(records, 1e-4);
    for (size_t i = 0; i < loose.size(); ++i) {
        checker.add("lightcone.front_epsilon_monotone", point({{"t", loose[i].t}}),
                    loose[i].r_star, tight[i].r_star);
        if (i > 0)
            checker.add("lightcone.front_time_monotone", point({{"t", loose[i].t}}),
                        loose[i - 1].r_star, loose[i].r_star);
    }

    std::vector<lrcone::lightcone::NormRecord> quiet;
    for (double t = 1.0; t <= 3.0; t += 1.0)
        for (double r = 1.0; r <= 3.0; r += 1.0) quiet.push_back({t, r, 1e-9});
    const auto flat = lightcone::empirical_front(quiet, 1e-3);
    for (const auto& rec : flat)
        checker.add("lightcone.front_all_below", point({{"t", rec.t}}), rec.r_star, 1.0, 0.0);

    (void)config;
    return checker.finish(start);
}

SuiteResult check_determinism(const RunConfig& config) {
    const auto start = Clock::now();
    Checker checker;
    RunConfig sweep_config = pinned_chain(config, 5, RPolicyConfig::Kind::fixed);
    sweep_config.sweep.t_grid = steps(0.0, 1.0, 0.25);

    sweep_config.workers = 1;
    const std::string first = sweep_csv_string(run_sweep(sweep_config));
    const std::string second = sweep_csv_string(run_sweep(sweep_config));
    sweep_config.workers = 4;
    const std::string parallel = sweep_csv_string(run_sweep(sweep_config));

    checker.add_flag("harness.determinism", "two runs, 1 worker", first == second);
    checker.add_flag("harness.determinism", "1 worker vs 4 workers", first == parallel);
    checker.add_flag("harness.determinism", "nonempty output", first.size() > 100);
    return checker.finish(start);
}

VerificationReport verify_all(const RunConfig& config) {
    const auto start = Clock::now();
    VerificationReport report;

    std::vector<SuiteResult> suites;
    suites.push_back(check_geometry_invariants(config));
    suites.push_back(check_model_invariants(config));
    suites.push_back(check_quantum_invariants(config));
    suites.push_back(check_conjugation_identity(config));
    suites.push_back(check_finite_range_domination(config));
    suites.push_back(check_duhamel_domination(config));
    suites.push_back(check_far_sum_domination(config));
    suites.push_back(check_theorem_domination(config));
    if (!quick(config)) suites.push_back(check_theorem_smoke_l10(config));
    suites.push_back(check_iterated_series(config));
    suites.push_back(check_assumption_a_oracles(config));
    suites.push_back(check_lightcone_layer(config));
    suites.push_back(check_front_properties(config));
    suites.push_back(check_determinism(config));

    report.min_margin = std::numeric_limits<double>::infinity();
    for (auto& suite : suites) {
        for (auto& row : suite.rows) {
            if (!row.pass) ++report.failures;
            report.min_margin = std::min(report.min_margin, row.margin);
            report.rows.push_back(std::move(row));
        }
    }
    report.wall_seconds = seconds_since(start);
    return report;
}

} // namespace lrcone::harness

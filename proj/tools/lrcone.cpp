#include "lrcone/emit.hpp"
#include "lrcone/errors.hpp"
#include "lrcone/sweep.hpp"
#include "lrcone/verify.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace lrcone;
using namespace lrcone::harness;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string config_path;
    int workers = -1; // -1 = keep config value
    std::string out_dir;
    std::string mode;
    bool refined = false;
};

void add_common(CLI::App* app, CommonFlags& flags) {
    app->add_option("--config", flags.config_path, "Run configuration (JSON)")->required();
    app->add_option("--workers", flags.workers, "Worker threads (0 = hardware)");
    app->add_option("--out", flags.out_dir, "Output directory (overrides output.dir)");
    app->add_option("--mode", flags.mode, "Constant mode: paper_form|numeric_tight|both");
    app->add_flag("--refined", flags.refined, "Use the integer-lattice shell refinement");
}

RunConfig load_config(const CommonFlags& flags) {
    std::ifstream in(flags.config_path);
    if (!in) throw ConfigError("--config", "cannot read " + flags.config_path);
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig config = parse_config(text.str());
    if (flags.workers >= 0) config.workers = flags.workers;
    if (!flags.out_dir.empty()) config.output.dir = flags.out_dir;
    if (!flags.mode.empty()) {
        if (flags.mode == "paper_form")
            config.bound.mode = BoundConfig::ModeSelection::paper_form;
        else if (flags.mode == "numeric_tight")
            config.bound.mode = BoundConfig::ModeSelection::numeric_tight;
        else if (flags.mode == "both")
            config.bound.mode = BoundConfig::ModeSelection::both;
        else
            throw ConfigError("--mode", "expected paper_form, numeric_tight or both");
    }
    if (flags.refined) {
        config.bound.refined_exponent = true;
        const double d = config.lattice.growth_dimension;
        if (std::abs(d - std::round(d)) > 1e-9 || d < 1.0)
            throw ConfigError("--refined", "requires an integer growth dimension >= 1");
    }
    return config;
}

int cmd_model(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    const ModelSummary summary = summarize_model(config);
    std::printf("growth certificate: C = %s, D = %s\n",
                format_double(summary.growth.prefactor).c_str(),
                format_double(summary.growth.exponent).c_str());
    std::printf("C0 = %s\n", format_double(summary.c0).c_str());
    std::printf("C0 (terms with diameter < %s) = %s\n",
                format_double(summary.truncation_cutoff).c_str(),
                format_double(summary.c0_truncated).c_str());
    std::printf("v = 2 e C0 = %s\n", format_double(summary.v).c_str());
    if (summary.profile_c_prime > 0.0)
        std::printf("minimal admissible power-law prefactor C' = %s\n",
                    format_double(summary.profile_c_prime).c_str());
    std::printf("\n%-12s %s\n", "R", "empirical f(R)");
    for (const auto& [r, f] : summary.f_table)
        std::printf("%-12s %s\n", format_double(r).c_str(), format_double(f).c_str());
    return kExitPass;
}

int cmd_simulate(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    const SweepResult result = run_sweep(config);
    emit_sweep(result, config.output.dir, "sweep", config.output.formats, true);
    std::printf("wrote %zu rows to %s (C0 = %s, v = %s)\n", result.rows.size(),
                config.output.dir.c_str(), format_double(result.c0).c_str(),
                format_double(result.v).c_str());
    return kExitPass;
}

int cmd_bound(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    const SweepResult result = run_bound_table(config);
    emit_sweep(result, config.output.dir, "bound", config.output.formats, false);
    std::printf("wrote %zu bound rows to %s\n", result.rows.size(), config.output.dir.c_str());
    return kExitPass;
}

int cmd_lightcone(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    const LightconeResult result = run_lightcone(config);
    std::filesystem::create_directories(config.output.dir);

    std::printf("kappa = %s, eta = %s, gamma = %s (1/eta = 1 + gamma)\n",
                format_double(result.parameters.kappa).c_str(),
                format_double(result.parameters.eta).c_str(),
                format_double(result.parameters.gamma).c_str());

    {
        std::ofstream out(std::filesystem::path(config.output.dir) / "curves.csv");
        write_curves_csv(result, out);
    }
    {
        std::ofstream out(std::filesystem::path(config.output.dir) / "front.csv");
        write_front_csv(result.front, out);
    }
    if (result.fit_valid) {
        std::ofstream out(std::filesystem::path(config.output.dir) / "fit.json");
        write_fit_json(result.fit, out);
        std::printf("front fit: exponent = %s over %d points\n",
                    format_double(result.fit.exponent).c_str(), result.fit.points_used);
    } else {
        std::printf("front fit skipped: not enough usable front points\n");
    }
    return kExitPass;
}

int cmd_verify(const CommonFlags& flags) {
    const RunConfig config = load_config(flags);
    const VerificationReport report = verify_all(config);
    emit_report(report, config.output.dir, config.output.formats);

    std::map<std::string, std::pair<int, int>> per_check; // pass/fail counts
    for (const auto& row : report.rows) {
        auto& [passed, failed] = per_check[row.check];
        (row.pass ? passed : failed) += 1;
    }
    for (const auto& [check, counts] : per_check)
        std::printf("%-40s %4d passed %4d failed\n", check.c_str(), counts.first, counts.second);
    for (const auto& row : report.rows)
        if (!row.pass)
            std::printf("FAIL %s [%s] measured=%s bound=%s margin=%s\n", row.check.c_str(),
                        row.point.c_str(), format_double(row.measured).c_str(),
                        format_double(row.bound).c_str(), format_double(row.margin).c_str());
    std::printf("%d checks, %d failures, min margin %s, %.1f s\n",
                static_cast<int>(report.rows.size()), report.failures,
                format_double(report.min_margin).c_str(), report.wall_seconds);
    return report.all_passed() ? kExitPass : kExitVerificationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lieb-Robinson bound toolkit for long-range interacting spin systems"};
    app.require_subcommand(1);

    CommonFlags model_flags, simulate_flags, bound_flags, lightcone_flags, verify_flags;
    add_common(app.add_subcommand("model", "Print the interaction's tail table, C0 and v"),
               model_flags);
    add_common(app.add_subcommand("simulate", "Run the sweep: exact dynamics vs bounds"),
               simulate_flags);
    add_common(app.add_subcommand("bound", "Evaluate the bound terms without dynamics"),
               bound_flags);
    add_common(app.add_subcommand("lightcone", "Exponents, front curves, empirical front"),
               lightcone_flags);
    add_common(app.add_subcommand("verify", "Run the full verification campaign"), verify_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints help/error text
        return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (app.got_subcommand("model")) return cmd_model(model_flags);
        if (app.got_subcommand("simulate")) return cmd_simulate(simulate_flags);
        if (app.got_subcommand("bound")) return cmd_bound(bound_flags);
        if (app.got_subcommand("lightcone")) return cmd_lightcone(lightcone_flags);
        if (app.got_subcommand("verify")) return cmd_verify(verify_flags);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitVerificationFailure;
    }
    return kExitUsage;
}

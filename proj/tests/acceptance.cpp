// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria run through the same verification suites the `verify` subcommand
// uses, each with its own wall-clock budget.

#include "lrcone/config.hpp"
#include "lrcone/emit.hpp"
#include "lrcone/errors.hpp"
#include "lrcone/sweep.hpp"
#include "lrcone/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace lrcone;
using namespace lrcone::harness;

namespace {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    int checks = 0;
    int failures = 0;
    double seconds = 0.0;
    double budget = 0.0;
    std::string detail;
};

RunConfig default_config() {
    return parse_config(R"({
      "lattice": {"kind": "chain", "length": 6},
      "interaction": {"type": "power_law_two_body", "C1": 1.0, "alpha": 2.0}
    })");
}

CriterionResult from_suite(int id, std::string name, const SuiteResult& suite, double budget) {
    CriterionResult result;
    result.id = id;
    result.name = std::move(name);
    result.checks = static_cast<int>(suite.rows.size());
    result.seconds = suite.seconds;
    result.budget = budget;
    for (const auto& row : suite.rows) {
        if (!row.pass) {
            ++result.failures;
            if (result.detail.empty())
                result.detail = row.check + " [" + row.point + "] measured=" +
                                format_double(row.measured) + " bound=" +
                                format_double(row.bound);
        }
    }
    result.pass = result.failures == 0 && suite.seconds < budget && result.checks > 0;
    if (result.failures == 0 && suite.seconds >= budget)
        result.detail = "runtime budget exceeded";
    return result;
}

std::string cli_path; // set by --cli

int run_cli(const std::string& args) {
    const std::string command = cli_path + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

CriterionResult criterion_9_determinism(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    result.id = 9;
    result.name = "determinism: identical bytes across runs and worker counts";
    result.budget = 240.0;

    const SuiteResult library_level = check_determinism(config);
    result.checks = static_cast<int>(library_level.rows.size());
    for (const auto& row : library_level.rows)
        if (!row.pass) ++result.failures;

    if (!cli_path.empty()) {
        const auto dir = std::filesystem::temp_directory_path() / "lrcone_acceptance";
        std::filesystem::create_directories(dir);
        RunConfig cli_config = default_config();
        cli_config.sweep.t_grid = {0.0, 0.5, 1.0};
        cli_config.output.formats = {"csv"};

        auto write_config = [&](const std::string& name, const RunConfig& cfg) {
            const auto path = dir / name;
            std::ofstream out(path);
            out << emit_config(cfg);
            return path.string();
        };

        const std::string config_path = write_config("determinism.json", cli_config);
        std::vector<std::string> outputs;
        for (const auto& [label, workers] :
             std::vector<std::pair<std::string, int>>{{"a", 1}, {"b", 1}, {"c", 4}}) {
            const auto out_dir = dir / ("out_" + label);
            std::filesystem::remove_all(out_dir);
            const int code = run_cli("simulate --config " + config_path + " --workers " +
                                     std::to_string(workers) + " --out " + out_dir.string());
            ++result.checks;
            if (code != 0) ++result.failures;
            outputs.push_back(slurp(out_dir / "sweep.csv"));
        }
        ++result.checks;
        if (outputs[0].empty() || outputs[0] != outputs[1] || outputs[0] != outputs[2]) {
            ++result.failures;
            result.detail = "CSV bytes differ across runs/worker counts";
        }

        // exit codes: 1 on verification failure, 2 on config errors
        RunConfig sabotage = default_config();
        sabotage.verify.level = VerifyConfig::Level::quick;
        sabotage.bound.c2_override = 0.0;
        const std::string sabotage_path = write_config("sabotage.json", sabotage);
        ++result.checks;
        if (run_cli("verify --config " + sabotage_path + " --out " +
                    (dir / "out_sabotage").string()) != 1) {
            ++result.failures;
            result.detail = "sabotaged config did not exit 1";
        }
        const auto bad_path = dir / "bad.json";
        std::ofstream(bad_path) << "{ not json";
        ++result.checks;
        if (run_cli("verify --config " + bad_path.string()) != 2) {
            ++result.failures;
            result.detail = "malformed config did not exit 2";
        }
        ++result.checks;
        if (run_cli("frobnicate") != 2) {
            ++result.failures;
            result.detail = "unknown subcommand did not exit 2";
        }
    }

    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.pass = result.failures == 0 && result.seconds < result.budget;
    return result;
}

CriterionResult criterion_5_theorem(const RunConfig& config) {
    // Main grid at L in {6, 8} and the L = 10 smoke, budgeted separately.
    const SuiteResult main_grid = check_theorem_domination(config);
    CriterionResult result =
        from_suite(5, "three-term bound domination (L=6,8 both policies/modes; L=10 smoke)",
                   main_grid, 300.0);
    const SuiteResult smoke = check_theorem_smoke_l10(config);
    result.checks += static_cast<int>(smoke.rows.size());
    for (const auto& row : smoke.rows) {
        if (!row.pass) {
            ++result.failures;
            if (result.detail.empty()) result.detail = row.check + " [" + row.point + "]";
        }
    }
    if (smoke.seconds >= 900.0) {
        result.pass = false;
        result.detail = "L=10 smoke exceeded its 15 min budget";
    }
    result.seconds += smoke.seconds;
    if (result.failures > 0) result.pass = false;
    return result;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg == "--cli" && i + 1 < argc) {
            cli_path = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--cli PATH]\n", argv[0]);
            return 2;
        }
    }

    const RunConfig config = default_config();
    std::vector<std::function<CriterionResult()>> criteria = {
        [&] {
            return from_suite(1, "interaction-picture conjugation identity (residual < 1e-9)",
                              check_conjugation_identity(config), 30.0);
        },
        [&] {
            return from_suite(2, "finite-range bound dominates truncated dynamics (L=8)",
                              check_finite_range_domination(config), 120.0);
        },
        [&] {
            return from_suite(3, "Duhamel decomposition dominates full dynamics (L=6)",
                              check_duhamel_domination(config), 120.0);
        },
        [&] {
            return from_suite(4, "far-sum bound dominates the brute-force term sum (both modes)",
                              check_far_sum_domination(config), 60.0);
        },
        [&] { return criterion_5_theorem(config); },
        [&] {
            return from_suite(6, "iterated series: C0 bound, vanishing law, worked values",
                              check_iterated_series(config), 30.0);
        },
        [&] {
            return from_suite(7, "tail and C0 oracles match independent brute force",
                              check_assumption_a_oracles(config), 30.0);
        },
        [&] {
            return from_suite(8, "light-cone formula layer (identity, fit, decay rates)",
                              check_lightcone_layer(config), 5.0);
        },
        [&] { return criterion_9_determinism(config); },
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i + 1) != only) continue;
        const CriterionResult result = criteria[i]();
        std::printf("criterion %d: %s — %s (%d checks, %.2f s, budget %.0f s)\n", result.id,
                    result.pass ? "PASS" : "FAIL", result.name.c_str(), result.checks,
                    result.seconds, result.budget);
        if (!result.pass) {
            ++failures;
            if (!result.detail.empty()) std::printf("  first failure: %s\n", result.detail.c_str());
        }
    }
    return failures == 0 ? 0 : 1;
}

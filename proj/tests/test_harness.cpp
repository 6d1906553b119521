#include "lrcone/config.hpp"
#include "lrcone/emit.hpp"
#include "lrcone/errors.hpp"
#include "lrcone/sweep.hpp"
#include "lrcone/verify.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace lrcone;
using namespace lrcone::harness;

namespace {

const char* kMinimalConfig = R"({
  "lattice": {"kind": "chain", "length": 6},
  "interaction": {"type": "power_law_two_body", "C1": 1.0, "alpha": 2.0}
})";

RunConfig minimal() { return parse_config(kMinimalConfig); }

} // namespace

TEST_SUITE("harness") {

TEST_CASE("minimal config gets the documented defaults") {
    const RunConfig config = minimal();
    CHECK(config.bound.lambda == 4.0);
    CHECK(config.bound.mode == BoundConfig::ModeSelection::numeric_tight);
    CHECK(config.sweep.t_grid.size() == 21);
    CHECK(config.sweep.t_grid.front() == 0.0);
    CHECK(config.sweep.t_grid.back() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(config.sweep.policy.kind == RPolicyConfig::Kind::fixed);
    CHECK(config.sweep.policy.value == 1.5);
    CHECK(config.limits.dim_cap == 4096);
    CHECK(config.observable_a.kind == "pauli_x");
    CHECK(*config.observable_a.site == 0);
}

TEST_CASE("validation errors name the field") {
    // kappa rule needs alpha > D
    const char* bad_alpha = R"({
      "lattice": {"kind": "chain", "length": 5},
      "interaction": {"type": "power_law_two_body", "alpha": 0.5},
      "sweep": {"R_policy": {"kind": "kappa_rule"}}
    })";
    CHECK_THROWS_WITH_AS(parse_config(bad_alpha),
                         doctest::Contains("alpha > D"), ConfigError);

    const char* unknown_key = R"({
      "lattice": {"kind": "chain", "length": 5, "wobble": 3},
      "interaction": {"type": "power_law_two_body"}
    })";
    CHECK_THROWS_WITH_AS(parse_config(unknown_key), doctest::Contains("unknown key"),
                         ConfigError);

    const char* low_cutoff = R"({
      "lattice": {"kind": "chain", "length": 5},
      "interaction": {"type": "power_law_two_body"},
      "sweep": {"R_policy": {"kind": "fixed", "value": 0.5}}
    })";
    CHECK_THROWS_AS(parse_config(low_cutoff), ConfigError);

    try {
        parse_config("{\n  \"lattice\": [,]\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() > 0);
    }
}

TEST_CASE("config round-trip through the canonical form") {
    const RunConfig config = minimal();
    const std::string emitted = emit_config(config);
    const RunConfig reparsed = parse_config(emitted);
    CHECK(emit_config(reparsed) == emitted);

    // a custom lattice with an explicit interaction round-trips too
    const char* custom = R"({
      "lattice": {"kind": "custom", "growth_dimension": 1.0,
                  "distances": [[0, 1, 2], [1, 0, 1], [2, 1, 0]]},
      "interaction": {"type": "explicit", "terms": [
        {"support": [0, 1],
         "matrix": [[[0.5, 0], [0, 0], [0, 0], [0, 0]],
                    [[0, 0], [-0.5, 0], [0, 0], [0, 0]],
                    [[0, 0], [0, 0], [-0.5, 0], [0, 0]],
                    [[0, 0], [0, 0], [0, 0], [0.5, 0]]]}]},
      "observables": {"B": {"kind": "pauli_z", "site": 2}}
    })";
    const RunConfig custom_config = parse_config(custom);
    CHECK(emit_config(parse_config(emit_config(custom_config))) == emit_config(custom_config));
}

TEST_CASE("sweep grid has the product shape and exact t=0 rows") {
    RunConfig config = minimal();
    config.lattice.length = 5;
    config.sweep.t_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    config.sweep.r_grid = std::vector<double>{1.0, 2.0, 3.0};
    const SweepResult result = run_sweep(config);
    CHECK(result.rows.size() == 15);

    for (const auto& row : result.rows) {
        CHECK(row.range == 1.5);
        if (row.t == 0.0) {
            CHECK(row.measured == 0.0); // disjoint supports commute exactly
            CHECK(row.truncated == 0.0);
            CHECK(row.breakdown.term2 == 0.0);
            CHECK(row.breakdown.term3 == 0.0);
        }
    }

    // rows are ordered by (t, r)
    for (size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1];
        const auto& b = result.rows[i];
        CHECK((a.t < b.t || (a.t == b.t && a.r < b.r)));
    }
}

TEST_CASE("margins are nonnegative on a small chain") {
    RunConfig config = minimal();
    config.sweep.t_grid = {0.0, 0.5, 1.0, 1.5, 2.0};
    config.bound.mode = BoundConfig::ModeSelection::both;
    const SweepResult result = run_sweep(config);
    CHECK(!result.rows.empty());
    for (const auto& row : result.rows) {
        CHECK(row.margin >= 0.0);
        CHECK(row.truncated <= row.breakdown.term1 + 1e-12);
    }
}

TEST_CASE("refined exponent mode still dominates end to end") {
    RunConfig config = minimal();
    config.sweep.t_grid = {0.0, 0.5, 1.0, 2.0};
    config.bound.mode = BoundConfig::ModeSelection::both;
    config.bound.refined_exponent = true;
    const SweepResult result = run_sweep(config);
    for (const auto& row : result.rows) {
        CHECK(row.margin >= 0.0);
        CHECK(row.truncated <= row.breakdown.term1 + 1e-12);
    }
}

TEST_CASE("constant variants order as expected and keep dominating") {
    RunConfig config = minimal();
    config.lattice.length = 5;
    config.sweep.t_grid = {0.0, 0.5, 1.0, 2.0};
    config.sweep.policy.kind = RPolicyConfig::Kind::kappa_rule;
    config.bound.mode = BoundConfig::ModeSelection::both;
    const SweepResult baseline = run_sweep(config);

    // truncated-family velocity and the integrated time factor only shrink
    // the bound
    config.bound.truncated_c0 = true;
    config.bound.integrated_time_factor = true;
    const SweepResult tight = run_sweep(config);

    // an admissible power-law profile sits above the empirical tail, so it
    // only grows the bound
    config.bound.truncated_c0 = false;
    config.bound.integrated_time_factor = false;
    config.bound.profile.kind = ProfileConfig::Kind::power_law;
    const SweepResult padded = run_sweep(config);

    REQUIRE(tight.rows.size() == baseline.rows.size());
    REQUIRE(padded.rows.size() == baseline.rows.size());
    for (size_t i = 0; i < baseline.rows.size(); ++i) {
        CHECK(tight.rows[i].margin >= 0.0);
        CHECK(padded.rows[i].margin >= 0.0);
        CHECK(tight.rows[i].measured == baseline.rows[i].measured);
        CHECK(tight.rows[i].breakdown.total <=
              baseline.rows[i].breakdown.total * (1 + 1e-12));
        CHECK(padded.rows[i].breakdown.total >=
              baseline.rows[i].breakdown.total * (1 - 1e-12));
        CHECK(tight.rows[i].truncated <= tight.rows[i].breakdown.term1 + 1e-12);
    }
}

TEST_CASE("grid lattice with the refined exponent dominates") {
    RunConfig config = minimal();
    config.lattice.kind = LatticeConfig::Kind::grid;
    config.lattice.dimension = 2;
    config.lattice.side = 2;
    config.lattice.growth_dimension = 2.0;
    config.interaction.alpha = 3.0;
    config.sweep.t_grid = {0.0, 0.5, 1.5};
    config.sweep.policy.kind = RPolicyConfig::Kind::kappa_rule;
    config.bound.mode = BoundConfig::ModeSelection::both;
    config.bound.refined_exponent = true;
    const SweepResult result = run_sweep(config);
    CHECK(!result.rows.empty());
    for (const auto& row : result.rows) {
        CHECK(row.margin >= 0.0);
        CHECK(row.range == doctest::Approx(std::max(1.0, std::pow(row.r, 0.75))).epsilon(1e-12));
    }
}

TEST_CASE("kappa rule computes R = max(1, r^kappa)") {
    RunConfig config = minimal();
    config.sweep.policy.kind = RPolicyConfig::Kind::kappa_rule;
    config.sweep.t_grid = {0.5};
    const SweepResult result = run_sweep(config);
    for (const auto& row : result.rows)
        CHECK(row.range == doctest::Approx(std::max(1.0, std::pow(row.r, 2.0 / 3.0))).epsilon(1e-12));
}

TEST_CASE("CSV output is deterministic across runs and worker counts") {
    RunConfig config = minimal();
    config.sweep.t_grid = {0.0, 0.5, 1.0};
    config.workers = 1;
    const std::string first = sweep_csv_string(run_sweep(config));
    const std::string again = sweep_csv_string(run_sweep(config));
    config.workers = 3;
    const std::string parallel = sweep_csv_string(run_sweep(config));
    CHECK(first == again);
    CHECK(first == parallel);

    std::istringstream lines(first);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,r,R,measured,truncated,term1,term2,term3,total,mode,margin");
}

TEST_CASE("json and csv carry identical values") {
    RunConfig config = minimal();
    config.lattice.length = 4;
    config.sweep.t_grid = {0.5, 1.0};
    const SweepResult result = run_sweep(config);

    std::ostringstream json_out;
    write_sweep_json(result, json_out, true);
    const auto parsed = nlohmann::json::parse(json_out.str());
    REQUIRE(parsed.at("rows").size() == result.rows.size());

    const std::string csv = sweep_csv_string(result);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    for (size_t i = 0; i < result.rows.size(); ++i) {
        REQUIRE(std::getline(lines, line));
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ','); // t
        CHECK(std::stod(cell) == parsed.at("rows")[i].at("t").get<double>());
        std::getline(cells, cell, ','); // r
        std::getline(cells, cell, ','); // R
        std::getline(cells, cell, ','); // measured
        CHECK(std::stod(cell) == parsed.at("rows")[i].at("measured").get<double>());
        std::getline(cells, cell, ','); // truncated
        std::getline(cells, cell, ','); // term1
        CHECK(std::stod(cell) == parsed.at("rows")[i].at("term1").get<double>());
    }
}

TEST_CASE("bound tables need no dynamics") {
    RunConfig config = minimal();
    config.lattice.length = 64; // far past the Hilbert cap
    config.sweep.t_grid = {0.5, 1.0};
    config.sweep.r_grid = std::vector<double>{8.0, 32.0};
    const SweepResult result = run_bound_table(config);
    CHECK(result.rows.size() == 4);
    for (const auto& row : result.rows) {
        CHECK(std::isnan(row.measured));
        CHECK(row.breakdown.total > 0.0);
    }
}

TEST_CASE("dimension cap and environment override") {
    RunConfig config = minimal();
    config.lattice.length = 8;
    config.limits.dim_cap = 128; // 2^8 = 256 > 128
    CHECK_THROWS_AS(run_sweep(config), ResourceLimitError);

    setenv("LRCONE_DIM_CAP", "1024", 1);
    CHECK(effective_dim_cap(config) == 1024);
    config.sweep.t_grid = {0.5};
    config.sweep.b_sites = std::vector<int>{7};
    CHECK_NOTHROW(run_sweep(config));
    unsetenv("LRCONE_DIM_CAP");
    CHECK(effective_dim_cap(config) == 128);
}

TEST_CASE("explicit B observable fixes the target") {
    RunConfig config = minimal();
    config.lattice.length = 4;
    config.sweep.t_grid = {0.5};
    config.observable_b.is_explicit = true;
    config.observable_b.support = {3};
    config.observable_b.matrix = Eigen::MatrixXcd::Zero(2, 2);
    config.observable_b.matrix(0, 1) = 1.0;
    config.observable_b.matrix(1, 0) = 1.0;
    const SweepResult result = run_sweep(config);
    CHECK(result.rows.size() == 1);
    CHECK(result.rows.front().r == 3.0);
}

TEST_CASE("quick verification campaign passes end to end") {
    RunConfig config = minimal();
    config.verify.level = VerifyConfig::Level::quick;
    const VerificationReport report = verify_all(config);
    CHECK(report.failures == 0);
    CHECK(report.all_passed());
    CHECK(report.rows.size() > 100);
}

TEST_CASE("sabotaged constants are caught and named") {
    RunConfig config = minimal();
    config.verify.level = VerifyConfig::Level::quick;
    config.bound.c2_override = 0.0;
    const VerificationReport report = verify_all(config);
    CHECK(report.failures > 0);
    bool theorem_named = false;
    for (const auto& row : report.rows)
        if (!row.pass && row.check.find("theorem_bound") != std::string::npos)
            theorem_named = true;
    CHECK(theorem_named);
}

} // TEST_SUITE

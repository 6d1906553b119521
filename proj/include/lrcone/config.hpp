#pragma once

#include "lrcone/model.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lrcone::harness {

struct LatticeConfig {
    enum class Kind { chain, grid, custom };
    Kind kind = Kind::chain;
    int length = 6;     // chain
    int dimension = 2;  // grid
    int side = 2;       // grid
    Eigen::MatrixXd distances;       // custom
    std::vector<std::string> labels; // custom, optional
    double growth_dimension = 1.0;   // D used for certificates; defaulted per kind
};

struct ExplicitTermConfig {
    std::vector<int> support;
    Eigen::MatrixXcd matrix;
};

struct InteractionConfig {
    enum class Type { power_law_two_body, explicit_terms };
    Type type = Type::power_law_two_body;
    double c1 = 1.0;
    double alpha = 2.0;
    model::CouplingPattern pattern = model::CouplingPattern::ising;
    std::vector<int> local_dims;             // explicit only; empty = all qubits
    std::vector<ExplicitTermConfig> terms;   // explicit only
};

struct ObservableConfig {
    bool is_explicit = false;
    std::string kind = "pauli_x"; // pauli_x|pauli_y|pauli_z
    std::optional<int> site;
    std::vector<int> support;     // explicit form
    Eigen::MatrixXcd matrix;      // explicit form
};

struct RPolicyConfig {
    enum class Kind { fixed, kappa_rule };
    Kind kind = Kind::fixed;
    double value = 1.5; // fixed only; must be >= 1
};

struct SweepConfig {
    std::vector<double> t_grid;
    std::optional<std::vector<double>> r_grid;
    std::optional<std::vector<int>> b_sites;
    RPolicyConfig policy;
};

struct ProfileConfig {
    enum class Kind { empirical, power_law };
    Kind kind = Kind::empirical;
    std::optional<double> c_prime; // power_law; fitted minimal when absent
};

struct BoundConfig {
    enum class ModeSelection { paper_form, numeric_tight, both };
    ModeSelection mode = ModeSelection::numeric_tight;
    ProfileConfig profile;
    double lambda = 4.0;
    bool refined_exponent = false;
    std::optional<double> c2_override;
    bool integrated_time_factor = false;
    bool truncated_c0 = false; // use the short-family C0 for the velocity
};

struct OutputConfig {
    std::string dir = "out";
    std::vector<std::string> formats = {"csv"}; // csv|json|plotdata
};

struct LimitsConfig {
    long dim_cap = 4096;
    long long max_chain_enumeration = 50'000'000;
    double quadrature_tol = 1e-6;
};

struct VerifyConfig {
    enum class Level { full, quick };
    Level level = Level::full;
};

struct RunConfig {
    LatticeConfig lattice;
    InteractionConfig interaction;
    ObservableConfig observable_a;
    ObservableConfig observable_b;
    SweepConfig sweep;
    BoundConfig bound;
    std::optional<double> lightcone_epsilon; // default 1e-3 * 2 |A| |B|
    OutputConfig output;
    LimitsConfig limits;
    VerifyConfig verify;
    std::uint64_t seed = 12345;
    int workers = 0; // 0 = hardware concurrency
};

/// Strict parse: unknown keys are rejected, constraints validated, defaults
/// applied. Throws ParseError (syntax) or ConfigError (validation).
RunConfig parse_config(const std::string& text);

/// Canonical JSON form; parse_config(emit_config(c)) reproduces c.
std::string emit_config(const RunConfig& config);

/// The dimension cap after the LRCONE_DIM_CAP environment override.
long effective_dim_cap(const RunConfig& config);

} // namespace lrcone::harness

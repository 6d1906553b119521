#include "lrcone/config.hpp"

#include "lrcone/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <set>

namespace lrcone::harness {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ConfigError(field, message);
}

void reject_unknown_keys(const json& object, const std::string& path,
                         const std::set<std::string>& allowed) {
    for (const auto& [key, value] : object.items())
        if (!allowed.count(key)) fail(path + "." + key, "unknown key");
}

const json* find(const json& object, const char* key) {
    auto it = object.find(key);
    return it == object.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> as_grid(const json& j, const std::string& path) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i) grid.push_back(as_number(j[i], path));
    } else if (j.is_object()) {
        reject_unknown_keys(j, path, {"start", "stop", "step"});
        const double start = as_number(j.at("start"), path + ".start");
        const double stop = as_number(j.at("stop"), path + ".stop");
        const double step = as_number(j.at("step"), path + ".step");
        if (step <= 0.0) fail(path + ".step", "must be positive");
        if (stop < start) fail(path + ".stop", "must be >= start");
        for (double v = start; v <= stop + 0.5 * step; v += step) grid.push_back(v);
    } else {
        fail(path, "expected an array or {start, stop, step}");
    }
    if (grid.empty()) fail(path, "grid must be nonempty");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) fail(path, "grid must be strictly increasing");
    return grid;
}

Eigen::MatrixXcd as_complex_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
    const size_t rows = j.size();
    Eigen::MatrixXcd m(rows, rows);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != rows)
            fail(path, "matrix must be square; entries are [re, im] pairs");
        for (size_t k = 0; k < rows; ++k) {
            const json& cell = j[i][k];
            if (!cell.is_array() || cell.size() != 2)
                fail(path, "matrix entries must be [re, im] pairs");
            m(static_cast<long>(i), static_cast<long>(k)) = std::complex<double>(
                as_number(cell[0], path), as_number(cell[1], path));
        }
    }
    return m;
}

json complex_matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long k = 0; k < m.cols(); ++k)
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

LatticeConfig parse_lattice(const json& j) {
    LatticeConfig lattice;
    reject_unknown_keys(j, "lattice",
                        {"kind", "length", "dimension", "side", "distances", "labels",
                         "growth_dimension"});
    const std::string kind = as_string(j.at("kind"), "lattice.kind");
    if (kind == "chain") {
        lattice.kind = LatticeConfig::Kind::chain;
        lattice.length = as_int(j.at("length"), "lattice.length");
        if (lattice.length < 1) fail("lattice.length", "must be >= 1");
        lattice.growth_dimension = 1.0;
    } else if (kind == "grid") {
        lattice.kind = LatticeConfig::Kind::grid;
        lattice.dimension = as_int(j.at("dimension"), "lattice.dimension");
        lattice.side = as_int(j.at("side"), "lattice.side");
        if (lattice.dimension < 1) fail("lattice.dimension", "must be >= 1");
        if (lattice.side < 1) fail("lattice.side", "must be >= 1");
        lattice.growth_dimension = static_cast<double>(lattice.dimension);
    } else if (kind == "custom") {
        lattice.kind = LatticeConfig::Kind::custom;
        const json* dist = find(j, "distances");
        if (!dist) fail("lattice.distances", "required for custom lattices");
        if (!dist->is_array() || dist->empty()) fail("lattice.distances", "expected a square table");
        const size_t n = dist->size();
        lattice.distances.resize(static_cast<long>(n), static_cast<long>(n));
        for (size_t i = 0; i < n; ++i) {
            if (!(*dist)[i].is_array() || (*dist)[i].size() != n)
                fail("lattice.distances", "expected a square table");
            for (size_t k = 0; k < n; ++k)
                lattice.distances(static_cast<long>(i), static_cast<long>(k)) =
                    as_number((*dist)[i][k], "lattice.distances");
        }
        if (const json* labels = find(j, "labels")) {
            for (size_t i = 0; i < labels->size(); ++i)
                lattice.labels.push_back(as_string((*labels)[i], "lattice.labels"));
        }
        const json* gd = find(j, "growth_dimension");
        if (!gd) fail("lattice.growth_dimension", "required for custom lattices");
        lattice.growth_dimension = as_number(*gd, "lattice.growth_dimension");
        if (lattice.growth_dimension <= 0.0) fail("lattice.growth_dimension", "must be positive");
    } else {
        fail("lattice.kind", "expected chain, grid or custom");
    }
    if (const json* gd = find(j, "growth_dimension"); gd && kind != "custom") {
        lattice.growth_dimension = as_number(*gd, "lattice.growth_dimension");
        if (lattice.growth_dimension <= 0.0) fail("lattice.growth_dimension", "must be positive");
    }
    return lattice;
}

InteractionConfig parse_interaction(const json& j) {
    InteractionConfig inter;
    reject_unknown_keys(j, "interaction", {"type", "C1", "alpha", "pattern", "local_dims", "terms"});
    const std::string type = as_string(j.at("type"), "interaction.type");
    if (type == "power_law_two_body") {
        inter.type = InteractionConfig::Type::power_law_two_body;
        if (const json* c1 = find(j, "C1")) inter.c1 = as_number(*c1, "interaction.C1");
        if (inter.c1 <= 0.0) fail("interaction.C1", "must be positive");
        if (const json* a = find(j, "alpha")) inter.alpha = as_number(*a, "interaction.alpha");
        if (inter.alpha <= 0.0) fail("interaction.alpha", "must be positive");
        if (const json* p = find(j, "pattern")) {
            const std::string pattern = as_string(*p, "interaction.pattern");
            if (pattern == "ising")
                inter.pattern = model::CouplingPattern::ising;
            else if (pattern == "xy")
                inter.pattern = model::CouplingPattern::xy;
            else
                fail("interaction.pattern", "expected ising or xy");
        }
        if (find(j, "terms")) fail("interaction.terms", "only valid for explicit interactions");
        if (find(j, "local_dims")) fail("interaction.local_dims", "only valid for explicit interactions");
    } else if (type == "explicit") {
        inter.type = InteractionConfig::Type::explicit_terms;
        if (find(j, "C1") || find(j, "alpha") || find(j, "pattern"))
            fail("interaction", "C1/alpha/pattern are only valid for power_law_two_body");
        if (const json* dims = find(j, "local_dims")) {
            for (size_t i = 0; i < dims->size(); ++i) {
                const int d = as_int((*dims)[i], "interaction.local_dims");
                if (d < 1) fail("interaction.local_dims", "must be >= 1");
                inter.local_dims.push_back(d);
            }
        }
        const json* terms = find(j, "terms");
        if (!terms || !terms->is_array()) fail("interaction.terms", "required for explicit interactions");
        for (size_t i = 0; i < terms->size(); ++i) {
            const std::string path = "interaction.terms[" + std::to_string(i) + "]";
            reject_unknown_keys((*terms)[i], path, {"support", "matrix"});
            ExplicitTermConfig term;
            const json& support = (*terms)[i].at("support");
            if (!support.is_array() || support.empty()) fail(path + ".support", "expected site indices");
            for (size_t k = 0; k < support.size(); ++k)
                term.support.push_back(as_int(support[k], path + ".support"));
            term.matrix = as_complex_matrix((*terms)[i].at("matrix"), path + ".matrix");
            inter.terms.push_back(std::move(term));
        }
    } else {
        fail("interaction.type", "expected power_law_two_body or explicit");
    }
    return inter;
}

ObservableConfig parse_observable(const json& j, const std::string& path) {
    ObservableConfig obs;
    reject_unknown_keys(j, path, {"kind", "site", "support", "matrix"});
    if (find(j, "matrix")) {
        obs.is_explicit = true;
        const json* support = find(j, "support");
        if (!support || !support->is_array() || support->empty())
            fail(path + ".support", "required for explicit observables");
        for (size_t i = 0; i < support->size(); ++i)
            obs.support.push_back(as_int((*support)[i], path + ".support"));
        obs.matrix = as_complex_matrix(j.at("matrix"), path + ".matrix");
        if (find(j, "kind") || find(j, "site"))
            fail(path, "kind/site and an explicit matrix are mutually exclusive");
        return obs;
    }
    if (const json* kind = find(j, "kind")) {
        obs.kind = as_string(*kind, path + ".kind");
        if (obs.kind != "pauli_x" && obs.kind != "pauli_y" && obs.kind != "pauli_z")
            fail(path + ".kind", "expected pauli_x, pauli_y or pauli_z");
    }
    if (const json* site = find(j, "site")) obs.site = as_int(*site, path + ".site");
    return obs;
}

SweepConfig parse_sweep(const json& j) {
    SweepConfig sweep;
    reject_unknown_keys(j, "sweep", {"t_grid", "r_grid", "b_sites", "R_policy"});
    if (const json* tg = find(j, "t_grid")) {
        sweep.t_grid = as_grid(*tg, "sweep.t_grid");
        if (sweep.t_grid.front() < 0.0) fail("sweep.t_grid", "times must be nonnegative");
    }
    if (const json* rg = find(j, "r_grid")) {
        sweep.r_grid = as_grid(*rg, "sweep.r_grid");
        if (sweep.r_grid->front() < 0.0) fail("sweep.r_grid", "distances must be nonnegative");
    }
    if (const json* bs = find(j, "b_sites")) {
        if (!bs->is_array() || bs->empty()) fail("sweep.b_sites", "expected site indices");
        std::vector<int> sites;
        for (size_t i = 0; i < bs->size(); ++i) sites.push_back(as_int((*bs)[i], "sweep.b_sites"));
        sweep.b_sites = std::move(sites);
    }
    if (sweep.r_grid && sweep.b_sites)
        fail("sweep", "r_grid and b_sites are mutually exclusive");
    if (const json* pol = find(j, "R_policy")) {
        reject_unknown_keys(*pol, "sweep.R_policy", {"kind", "value"});
        const std::string kind = as_string(pol->at("kind"), "sweep.R_policy.kind");
        if (kind == "fixed") {
            sweep.policy.kind = RPolicyConfig::Kind::fixed;
            if (const json* v = find(*pol, "value"))
                sweep.policy.value = as_number(*v, "sweep.R_policy.value");
            if (sweep.policy.value < 1.0) fail("sweep.R_policy.value", "cutoff must be >= 1");
        } else if (kind == "kappa_rule") {
            sweep.policy.kind = RPolicyConfig::Kind::kappa_rule;
            if (find(*pol, "value")) fail("sweep.R_policy.value", "not used by kappa_rule");
        } else {
            fail("sweep.R_policy.kind", "expected fixed or kappa_rule");
        }
    }
    return sweep;
}

ProfileConfig parse_profile(const json& j) {
    ProfileConfig profile;
    reject_unknown_keys(j, "bound.profile", {"kind", "C_prime"});
    const std::string kind = as_string(j.at("kind"), "bound.profile.kind");
    if (kind == "empirical") {
        profile.kind = ProfileConfig::Kind::empirical;
        if (find(j, "C_prime")) fail("bound.profile.C_prime", "only valid for power_law profiles");
    } else if (kind == "power_law") {
        profile.kind = ProfileConfig::Kind::power_law;
        if (const json* cp = find(j, "C_prime")) {
            profile.c_prime = as_number(*cp, "bound.profile.C_prime");
            if (*profile.c_prime <= 0.0) fail("bound.profile.C_prime", "must be positive");
        }
    } else {
        fail("bound.profile.kind", "expected empirical or power_law");
    }
    return profile;
}

BoundConfig parse_bound(const json& j) {
    BoundConfig bound;
    reject_unknown_keys(j, "bound",
                        {"constant_mode", "profile", "lambda", "refined_exponent", "c2_override",
                         "integrated_time_factor", "truncated_c0"});
    if (const json* mode = find(j, "constant_mode")) {
        const std::string m = as_string(*mode, "bound.constant_mode");
        if (m == "paper_form")
            bound.mode = BoundConfig::ModeSelection::paper_form;
        else if (m == "numeric_tight")
            bound.mode = BoundConfig::ModeSelection::numeric_tight;
        else if (m == "both")
            bound.mode = BoundConfig::ModeSelection::both;
        else
            fail("bound.constant_mode", "expected paper_form, numeric_tight or both");
    }
    if (const json* profile = find(j, "profile")) bound.profile = parse_profile(*profile);
    if (const json* lambda = find(j, "lambda")) {
        bound.lambda = as_number(*lambda, "bound.lambda");
        if (bound.lambda <= 1.0) fail("bound.lambda", "scale parameter must exceed 1");
    }
    if (const json* refined = find(j, "refined_exponent"))
        bound.refined_exponent = as_bool(*refined, "bound.refined_exponent");
    if (const json* c2 = find(j, "c2_override")) {
        bound.c2_override = as_number(*c2, "bound.c2_override");
        if (*bound.c2_override < 0.0) fail("bound.c2_override", "must be nonnegative");
    }
    if (const json* itf = find(j, "integrated_time_factor"))
        bound.integrated_time_factor = as_bool(*itf, "bound.integrated_time_factor");
    if (const json* tc0 = find(j, "truncated_c0"))
        bound.truncated_c0 = as_bool(*tc0, "bound.truncated_c0");
    return bound;
}

int lattice_size(const LatticeConfig& lattice) {
    switch (lattice.kind) {
        case LatticeConfig::Kind::chain: return lattice.length;
        case LatticeConfig::Kind::grid: {
            long n = 1;
            for (int k = 0; k < lattice.dimension; ++k) n *= lattice.side;
            return static_cast<int>(n);
        }
        case LatticeConfig::Kind::custom: return static_cast<int>(lattice.distances.rows());
    }
    return 0;
}

void validate(RunConfig& config) {
    const int sites = lattice_size(config.lattice);

    if (config.interaction.type == InteractionConfig::Type::explicit_terms) {
        if (!config.interaction.local_dims.empty() &&
            static_cast<int>(config.interaction.local_dims.size()) != sites)
            fail("interaction.local_dims", "size must match the lattice site count");
        for (const auto& term : config.interaction.terms)
            for (int s : term.support)
                if (s < 0 || s >= sites) fail("interaction.terms", "support site outside the lattice");
    }

    if (!config.observable_a.site && !config.observable_a.is_explicit)
        config.observable_a.site = 0;
    for (const ObservableConfig* obs : {&config.observable_a, &config.observable_b}) {
        if (obs->site && (*obs->site < 0 || *obs->site >= sites))
            fail("observables", "site outside the lattice");
        for (int s : obs->support)
            if (s < 0 || s >= sites) fail("observables", "support site outside the lattice");
    }

    if (config.sweep.t_grid.empty()) {
        for (int i = 0; i <= 20; ++i) config.sweep.t_grid.push_back(0.1 * i);
    }
    if (config.sweep.b_sites) {
        for (int s : *config.sweep.b_sites)
            if (s < 0 || s >= sites) fail("sweep.b_sites", "site outside the lattice");
    }

    if (config.sweep.policy.kind == RPolicyConfig::Kind::kappa_rule) {
        if (config.interaction.type != InteractionConfig::Type::power_law_two_body)
            fail("sweep.R_policy", "kappa_rule needs a power-law interaction");
        if (!(config.interaction.alpha > config.lattice.growth_dimension))
            fail("sweep.R_policy", "kappa_rule requires alpha > D (got alpha = " +
                                       std::to_string(config.interaction.alpha) +
                                       ", D = " + std::to_string(config.lattice.growth_dimension) + ")");
    }

    if (config.bound.refined_exponent) {
        const double d = config.lattice.growth_dimension;
        if (std::abs(d - std::round(d)) > 1e-9 || d < 1.0)
            fail("bound.refined_exponent", "requires an integer growth dimension >= 1");
    }

    if (config.lightcone_epsilon && *config.lightcone_epsilon <= 0.0)
        fail("lightcone.epsilon", "must be positive");

    for (const auto& format : config.output.formats)
        if (format != "csv" && format != "json" && format != "plotdata")
            fail("output.formats", "expected csv, json or plotdata");

    if (config.limits.dim_cap < 2) fail("limits.dim_cap", "must be >= 2");
    if (config.limits.max_chain_enumeration < 1) fail("limits.max_chain_enumeration", "must be >= 1");
    if (config.limits.quadrature_tol <= 0.0) fail("limits.quadrature_tol", "must be positive");
    if (config.workers < 0) fail("workers", "must be >= 0");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; convert to line/column.
        int line = 1, column = 1;
        const size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
        for (size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(line, column, e.what());
    }
    if (!root.is_object()) fail("", "config must be a JSON object");
    reject_unknown_keys(root, "",
                        {"lattice", "interaction", "observables", "sweep", "bound", "lightcone",
                         "output", "limits", "verify", "seed", "workers"});

    RunConfig config;
    if (const json* lattice = find(root, "lattice"))
        config.lattice = parse_lattice(*lattice);
    else
        fail("lattice", "required");
    if (const json* inter = find(root, "interaction"))
        config.interaction = parse_interaction(*inter);
    else
        fail("interaction", "required");

    if (const json* obs = find(root, "observables")) {
        reject_unknown_keys(*obs, "observables", {"A", "B"});
        if (const json* a = find(*obs, "A")) config.observable_a = parse_observable(*a, "observables.A");
        if (const json* b = find(*obs, "B")) config.observable_b = parse_observable(*b, "observables.B");
    }
    if (const json* sweep = find(root, "sweep")) config.sweep = parse_sweep(*sweep);
    if (const json* bound = find(root, "bound")) config.bound = parse_bound(*bound);
    if (const json* lc = find(root, "lightcone")) {
        reject_unknown_keys(*lc, "lightcone", {"epsilon"});
        if (const json* eps = find(*lc, "epsilon"))
            config.lightcone_epsilon = as_number(*eps, "lightcone.epsilon");
    }
    if (const json* output = find(root, "output")) {
        reject_unknown_keys(*output, "output", {"dir", "formats"});
        if (const json* dir = find(*output, "dir")) config.output.dir = as_string(*dir, "output.dir");
        if (const json* formats = find(*output, "formats")) {
            config.output.formats.clear();
            for (size_t i = 0; i < formats->size(); ++i)
                config.output.formats.push_back(as_string((*formats)[i], "output.formats"));
            if (config.output.formats.empty()) fail("output.formats", "must be nonempty");
        }
    }
    if (const json* limits = find(root, "limits")) {
        reject_unknown_keys(*limits, "limits", {"dim_cap", "max_chain_enumeration", "quadrature_tol"});
        if (const json* cap = find(*limits, "dim_cap"))
            config.limits.dim_cap = as_int(*cap, "limits.dim_cap");
        if (const json* cap = find(*limits, "max_chain_enumeration")) {
            if (!cap->is_number_integer()) fail("limits.max_chain_enumeration", "expected an integer");
            config.limits.max_chain_enumeration = cap->get<long long>();
        }
        if (const json* tol = find(*limits, "quadrature_tol"))
            config.limits.quadrature_tol = as_number(*tol, "limits.quadrature_tol");
    }
    if (const json* verify = find(root, "verify")) {
        reject_unknown_keys(*verify, "verify", {"level"});
        if (const json* level = find(*verify, "level")) {
            const std::string l = as_string(*level, "verify.level");
            if (l == "full")
                config.verify.level = VerifyConfig::Level::full;
            else if (l == "quick")
                config.verify.level = VerifyConfig::Level::quick;
            else
                fail("verify.level", "expected full or quick");
        }
    }
    if (const json* seed = find(root, "seed")) {
        if (seed->is_number_unsigned())
            config.seed = seed->get<std::uint64_t>();
        else if (seed->is_number_integer() && seed->get<long long>() >= 0)
            config.seed = static_cast<std::uint64_t>(seed->get<long long>());
        else
            fail("seed", "expected a nonnegative integer");
    }
    if (const json* workers = find(root, "workers")) config.workers = as_int(*workers, "workers");

    validate(config);
    return config;
}

std::string emit_config(const RunConfig& config) {
    json root;

    json lattice;
    switch (config.lattice.kind) {
        case LatticeConfig::Kind::chain:
            lattice["kind"] = "chain";
            lattice["length"] = config.lattice.length;
            break;
        case LatticeConfig::Kind::grid:
            lattice["kind"] = "grid";
            lattice["dimension"] = config.lattice.dimension;
            lattice["side"] = config.lattice.side;
            break;
        case LatticeConfig::Kind::custom: {
            lattice["kind"] = "custom";
            json rows = json::array();
            for (long i = 0; i < config.lattice.distances.rows(); ++i) {
                json row = json::array();
                for (long k = 0; k < config.lattice.distances.cols(); ++k)
                    row.push_back(config.lattice.distances(i, k));
                rows.push_back(std::move(row));
            }
            lattice["distances"] = std::move(rows);
            if (!config.lattice.labels.empty()) lattice["labels"] = config.lattice.labels;
            break;
        }
    }
    lattice["growth_dimension"] = config.lattice.growth_dimension;
    root["lattice"] = std::move(lattice);

    json inter;
    if (config.interaction.type == InteractionConfig::Type::power_law_two_body) {
        inter["type"] = "power_law_two_body";
        inter["C1"] = config.interaction.c1;
        inter["alpha"] = config.interaction.alpha;
        inter["pattern"] =
            config.interaction.pattern == model::CouplingPattern::ising ? "ising" : "xy";
    } else {
        inter["type"] = "explicit";
        if (!config.interaction.local_dims.empty()) inter["local_dims"] = config.interaction.local_dims;
        json terms = json::array();
        for (const auto& term : config.interaction.terms) {
            json t;
            t["support"] = term.support;
            t["matrix"] = complex_matrix_to_json(term.matrix);
            terms.push_back(std::move(t));
        }
        inter["terms"] = std::move(terms);
    }
    root["interaction"] = std::move(inter);

    auto observable_to_json = [](const ObservableConfig& obs) {
        json j;
        if (obs.is_explicit) {
            j["support"] = obs.support;
            j["matrix"] = complex_matrix_to_json(obs.matrix);
        } else {
            j["kind"] = obs.kind;
            if (obs.site) j["site"] = *obs.site;
        }
        return j;
    };
    root["observables"]["A"] = observable_to_json(config.observable_a);
    root["observables"]["B"] = observable_to_json(config.observable_b);

    json sweep;
    sweep["t_grid"] = config.sweep.t_grid;
    if (config.sweep.r_grid) sweep["r_grid"] = *config.sweep.r_grid;
    if (config.sweep.b_sites) sweep["b_sites"] = *config.sweep.b_sites;
    if (config.sweep.policy.kind == RPolicyConfig::Kind::fixed) {
        sweep["R_policy"]["kind"] = "fixed";
        sweep["R_policy"]["value"] = config.sweep.policy.value;
    } else {
        sweep["R_policy"]["kind"] = "kappa_rule";
    }
    root["sweep"] = std::move(sweep);

    json bound;
    switch (config.bound.mode) {
        case BoundConfig::ModeSelection::paper_form: bound["constant_mode"] = "paper_form"; break;
        case BoundConfig::ModeSelection::numeric_tight: bound["constant_mode"] = "numeric_tight"; break;
        case BoundConfig::ModeSelection::both: bound["constant_mode"] = "both"; break;
    }
    bound["profile"]["kind"] =
        config.bound.profile.kind == ProfileConfig::Kind::empirical ? "empirical" : "power_law";
    if (config.bound.profile.c_prime) bound["profile"]["C_prime"] = *config.bound.profile.c_prime;
    bound["lambda"] = config.bound.lambda;
    bound["refined_exponent"] = config.bound.refined_exponent;
    if (config.bound.c2_override) bound["c2_override"] = *config.bound.c2_override;
    bound["integrated_time_factor"] = config.bound.integrated_time_factor;
    bound["truncated_c0"] = config.bound.truncated_c0;
    root["bound"] = std::move(bound);

    if (config.lightcone_epsilon) root["lightcone"]["epsilon"] = *config.lightcone_epsilon;

    root["output"]["dir"] = config.output.dir;
    root["output"]["formats"] = config.output.formats;
    root["limits"]["dim_cap"] = config.limits.dim_cap;
    root["limits"]["max_chain_enumeration"] = config.limits.max_chain_enumeration;
    root["limits"]["quadrature_tol"] = config.limits.quadrature_tol;
    root["verify"]["level"] =
        config.verify.level == VerifyConfig::Level::full ? "full" : "quick";
    root["seed"] = config.seed;
    root["workers"] = config.workers;

    return root.dump(2) + "\n";
}

long effective_dim_cap(const RunConfig& config) {
    if (const char* env = std::getenv("LRCONE_DIM_CAP")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || cap < 2)
            throw ConfigError("LRCONE_DIM_CAP", "must be an integer >= 2");
        return cap;
    }
    return config.limits.dim_cap;
}

} // namespace lrcone::harness

#include "lrcone/emit.hpp"

#include "lrcone/errors.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace lrcone::harness {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

constexpr const char* kSweepColumns[] = {"t",     "r",     "R",     "measured", "truncated",
                                         "term1", "term2", "term3", "total",    "mode",
                                         "margin"};
constexpr const char* kBoundColumns[] = {"t", "r", "R", "term1", "term2", "term3", "total", "mode"};

std::vector<std::pair<std::string, std::string>> row_fields(const SweepRow& row,
                                                            bool with_dynamics) {
    std::vector<std::pair<std::string, std::string>> fields;
    fields.emplace_back("t", format_double(row.t));
    fields.emplace_back("r", format_double(row.r));
    fields.emplace_back("R", format_double(row.range));
    if (with_dynamics) {
        fields.emplace_back("measured", format_double(row.measured));
        fields.emplace_back("truncated", format_double(row.truncated));
    }
    fields.emplace_back("term1", format_double(row.breakdown.term1));
    fields.emplace_back("term2", format_double(row.breakdown.term2));
    fields.emplace_back("term3", format_double(row.breakdown.term3));
    fields.emplace_back("total", format_double(row.breakdown.total));
    fields.emplace_back("mode", bounds::to_string(row.breakdown.constant_mode));
    if (with_dynamics) fields.emplace_back("margin", format_double(row.margin));
    return fields;
}

void write_delimited(const SweepResult& result, std::ostream& out, bool with_dynamics,
                     const std::string& sep, bool comment_header) {
    const auto& columns = with_dynamics ? kSweepColumns : kBoundColumns;
    const size_t n_cols = with_dynamics ? std::size(kSweepColumns) : std::size(kBoundColumns);
    if (comment_header) out << "# ";
    for (size_t i = 0; i < n_cols; ++i) out << columns[i] << (i + 1 < n_cols ? sep : "\n");
    for (const auto& row : result.rows) {
        const auto fields = row_fields(row, with_dynamics);
        for (size_t i = 0; i < fields.size(); ++i)
            out << fields[i].second << (i + 1 < fields.size() ? sep : "\n");
    }
}

} // namespace

void write_sweep_csv(const SweepResult& result, std::ostream& out, bool with_dynamics) {
    write_delimited(result, out, with_dynamics, ",", false);
}

void write_sweep_plotdata(const SweepResult& result, std::ostream& out, bool with_dynamics) {
    write_delimited(result, out, with_dynamics, " ", true);
}

void write_sweep_json(const SweepResult& result, std::ostream& out, bool with_dynamics) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        json j;
        j["t"] = row.t;
        j["r"] = row.r;
        j["R"] = row.range;
        if (with_dynamics) {
            j["measured"] = row.measured;
            j["truncated"] = row.truncated;
            j["margin"] = row.margin;
        }
        j["term1"] = row.breakdown.term1;
        j["term2"] = row.breakdown.term2;
        j["term3"] = row.breakdown.term3;
        j["total"] = row.breakdown.total;
        j["mode"] = bounds::to_string(row.breakdown.constant_mode);
        rows.push_back(std::move(j));
    }
    json root;
    root["rows"] = std::move(rows);
    root["C0"] = result.c0;
    root["v"] = result.v;
    root["growth_C"] = result.growth.prefactor;
    root["growth_D"] = result.growth.exponent;
    out << root.dump(2) << "\n";
}

void write_report_csv(const VerificationReport& report, std::ostream& out) {
    out << "check,point,measured,bound,margin,pass\n";
    for (const auto& row : report.rows) {
        out << row.check << "," << row.point << "," << format_double(row.measured) << ","
            << format_double(row.bound) << "," << format_double(row.margin) << ","
            << (row.pass ? "1" : "0") << "\n";
    }
}

void write_report_plotdata(const VerificationReport& report, std::ostream& out) {
    out << "# check point measured bound margin pass\n";
    for (const auto& row : report.rows) {
        std::string point = row.point;
        for (char& c : point)
            if (c == ' ') c = '_';
        out << row.check << " " << (point.empty() ? "-" : point) << " "
            << format_double(row.measured) << " " << format_double(row.bound) << " "
            << format_double(row.margin) << " " << (row.pass ? "1" : "0") << "\n";
    }
}

void write_report_json(const VerificationReport& report, std::ostream& out) {
    json rows = json::array();
    for (const auto& row : report.rows) {
        json j;
        j["check"] = row.check;
        j["point"] = row.point;
        j["measured"] = row.measured;
        j["bound"] = row.bound;
        j["margin"] = row.margin;
        j["pass"] = row.pass;
        rows.push_back(std::move(j));
    }
    json root;
    root["rows"] = std::move(rows);
    root["failures"] = report.failures;
    root["min_margin"] = report.min_margin;
    root["wall_seconds"] = report.wall_seconds;
    out << root.dump(2) << "\n";
}

void write_front_csv(const std::vector<lightcone::FrontRecord>& front, std::ostream& out) {
    out << "t,r_star,epsilon\n";
    for (const auto& rec : front)
        out << format_double(rec.t) << "," << format_double(rec.r_star) << ","
            << format_double(rec.epsilon) << "\n";
}

void write_fit_json(const lightcone::PowerLawFit& fit, std::ostream& out) {
    json root;
    root["exponent"] = fit.exponent;
    root["prefactor"] = fit.prefactor;
    root["residual"] = fit.residual;
    root["points_used"] = fit.points_used;
    out << root.dump(2) << "\n";
}

void write_curves_csv(const LightconeResult& result, std::ostream& out) {
    out << "t,r_max,v_g,v_g_display\n";
    for (const auto& row : result.curves)
        out << format_double(row[0]) << "," << format_double(row[1]) << ","
            << format_double(row[2]) << "," << format_double(row[3]) << "\n";
}

namespace {

std::ofstream open_output(const std::filesystem::path& dir, const std::string& filename) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = dir / filename;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

} // namespace

void emit_sweep(const SweepResult& result, const std::filesystem::path& dir,
                const std::string& basename, const std::vector<std::string>& formats,
                bool with_dynamics) {
    for (const auto& format : formats) {
        if (format == "csv") {
            auto out = open_output(dir, basename + ".csv");
            write_sweep_csv(result, out, with_dynamics);
        } else if (format == "json") {
            auto out = open_output(dir, basename + ".json");
            write_sweep_json(result, out, with_dynamics);
        } else if (format == "plotdata") {
            auto out = open_output(dir, basename + ".dat");
            write_sweep_plotdata(result, out, with_dynamics);
        }
    }
}

void emit_report(const VerificationReport& report, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats) {
    for (const auto& format : formats) {
        if (format == "csv") {
            auto out = open_output(dir, "verify.csv");
            write_report_csv(report, out);
        } else if (format == "json") {
            auto out = open_output(dir, "verify.json");
            write_report_json(report, out);
        } else if (format == "plotdata") {
            auto out = open_output(dir, "verify.dat");
            write_report_plotdata(report, out);
        }
    }
}

std::string sweep_csv_string(const SweepResult& result, bool with_dynamics) {
    std::ostringstream out;
    write_sweep_csv(result, out, with_dynamics);
    return out.str();
}

} // namespace lrcone::harness

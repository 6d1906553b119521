#pragma once

#include "lrcone/sweep.hpp"
#include "lrcone/verify.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lrcone::harness {

/// 17 significant digits, so determinism checks are bit-exact.
std::string format_double(double value);

void write_sweep_csv(const SweepResult& result, std::ostream& out, bool with_dynamics);
void write_sweep_json(const SweepResult& result, std::ostream& out, bool with_dynamics);
void write_sweep_plotdata(const SweepResult& result, std::ostream& out, bool with_dynamics);

void write_report_csv(const VerificationReport& report, std::ostream& out);
void write_report_json(const VerificationReport& report, std::ostream& out);
void write_report_plotdata(const VerificationReport& report, std::ostream& out);

void write_front_csv(const std::vector<lightcone::FrontRecord>& front, std::ostream& out);
void write_fit_json(const lightcone::PowerLawFit& fit, std::ostream& out);
void write_curves_csv(const LightconeResult& result, std::ostream& out);

/// Renders `basename.{csv,json,dat}` into dir for each requested format.
/// Throws std::runtime_error on unwritable paths.
void emit_sweep(const SweepResult& result, const std::filesystem::path& dir,
                const std::string& basename, const std::vector<std::string>& formats,
                bool with_dynamics);

void emit_report(const VerificationReport& report, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats);

std::string sweep_csv_string(const SweepResult& result, bool with_dynamics = true);

} // namespace lrcone::harness

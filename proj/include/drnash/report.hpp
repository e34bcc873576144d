#pragma once

#include <filesystem>
#include <string>

#include "drnash/equilibrium.hpp"

namespace drnash {

/// Formats one CSV number: fixed 6 decimal places ("%.6f"), "inf"/"nan" for
/// non-finite values. Integers are written as-is by the writers.
std::string csv_number(double v);

/// Writes dr_schedule.csv, prices.csv, settlement.csv, trace.csv and
/// summary.json into out_dir (created if missing). Byte-deterministic:
/// identical results produce identical files.
void write_run_artifacts(const Scenario& scenario, const EquilibriumResult& result,
                         const std::filesystem::path& out_dir);

/// Writes nash_report.csv (one row per prosumer-hour).
void write_nash_report(const Scenario& scenario, const NashReport& report,
                       const std::filesystem::path& out_dir);

/// Reconstructs the decision state of a completed run from dr_schedule.csv
/// and prices.csv in out_dir: dr from the schedule (x recomputed as
/// baseline - dr), prices from the quotes table. Throws FormatError on
/// malformed rows and std::runtime_error on missing files.
GameState read_run_state(const Scenario& scenario, const std::filesystem::path& out_dir);

}  // namespace drnash

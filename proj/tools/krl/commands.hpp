#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <krl/properties.hpp>
#include <krl/solver.hpp>

#include "krl/config.hpp"

namespace krl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitVerify = 4;

inline constexpr std::string_view kSweepCsvHeader = "value,lambda0,residual,iters,status";

/// Builds the operator, finds an (H)-constant for the default u, runs continuation and
/// writes the trace CSV and eigenpair JSON. On solver failure the partial trace is written.
int run_solve(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Runs the property checks and writes the report array. Exit 4 lists failing properties.
int run_verify(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// One continuation per value of `key` (e.g. "p" or "operator.mu"), CSV to [output] sweep.
int run_sweep(const std::filesystem::path& config, const std::string& key, const std::vector<std::string>& values,
              std::ostream& out, std::ostream& err);

/// The property reports behind `verify`, in output order.
[[nodiscard]] std::vector<PropertyReport> verify_reports(const RunConfig& cfg);

/// Reports that decide the verify exit status (strong_positivity is informational).
[[nodiscard]] bool counts_for_exit(const PropertyReport& r);

}  // namespace krl::cli

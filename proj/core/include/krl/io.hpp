#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "krl/properties.hpp"
#include "krl/solver.hpp"
#include "krl/trace.hpp"

namespace krl {

/// Header line of the trace CSV.
inline constexpr std::string_view kTraceCsvHeader = "eps,lambda,iters,residual,step_delta";

/// eps,lambda,iters,residual,step_delta with one row per level; doubles round-trip exactly.
[[nodiscard]] std::string trace_to_csv(const ContinuationTrace& trace);

/// {lambda0, residual, norm: "sup", x: [...]}
[[nodiscard]] nlohmann::json eigenpair_to_json(const EigenPair& pair);
[[nodiscard]] EigenPair eigenpair_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json reports_to_json(const std::vector<PropertyReport>& reports);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

/// Writes `contents` to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace krl

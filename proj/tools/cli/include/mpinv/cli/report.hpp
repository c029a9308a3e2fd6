#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mpinv/pinv.hpp"

namespace mpinv::cli {

/// What one CLI command did. Keys serialize in a fixed order:
/// command, route_used, tolerances, penrose_residuals, result, timing_ms.
struct RunReport {
  std::string command;
  std::string route_used;  // "none" for commands without a pseudoinverse
  /// Kept in insertion order.
  std::vector<std::pair<std::string, double>> tolerances;
  std::optional<PenroseReport> penrose_residuals;
  /// Command-specific values (lstsq residual, verify verdict, demo steps...).
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  double timing_ms = 0.0;

  nlohmann::ordered_json to_json(bool include_timing = true) const;
  /// One "key: value" line per field, nested objects flattened with dots.
  std::string to_text(bool include_timing = true) const;
};

}  // namespace mpinv::cli

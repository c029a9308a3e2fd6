#include "mpinv/cli/report.hpp"

#include <sstream>

namespace mpinv::cli {

namespace {

void flatten(const nlohmann::ordered_json& value, const std::string& prefix, std::ostringstream& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    return;
  }
  out << prefix << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

}  // namespace

nlohmann::ordered_json RunReport::to_json(bool include_timing) const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  doc["route_used"] = route_used;
  auto tol = nlohmann::ordered_json::object();
  for (const auto& [name, value] : tolerances) tol[name] = value;
  doc["tolerances"] = std::move(tol);
  if (penrose_residuals) {
    const PenroseReport& p = *penrose_residuals;
    doc["penrose_residuals"] = {{"r1", p.r1}, {"r2", p.r2}, {"r3", p.r3}, {"r4", p.r4}, {"scale", p.scale}};
  } else {
    doc["penrose_residuals"] = nullptr;
  }
  doc["result"] = result;
  if (include_timing) doc["timing_ms"] = timing_ms;
  return doc;
}

std::string RunReport::to_text(bool include_timing) const {
  std::ostringstream out;
  flatten(to_json(include_timing), "", out);
  return out.str();
}

}  // namespace mpinv::cli

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bishop/locus.hpp"

namespace bishop {

/// Version string written into reports.
std::string_view tool_version();

struct AnalysisReport {
  std::string expression;  // canonical text of f
  std::vector<LocusComponent> components;
  std::vector<SpherePoint> indeterminate_points;
  LocusParams params;  // also carries the tolerances and the RNG seed
  std::string tool_version;
  /// Remarks on known closed forms for built-in examples.
  std::vector<std::string> notes;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// JSON text. gamma is a number, the string "inf", or null when degenerate.
std::string serialize(const AnalysisReport& report);
/// Throws InvalidArgument on malformed input.
AnalysisReport deserialize(std::string_view json);

}  // namespace bishop

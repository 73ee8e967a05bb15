#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bishop/examples.hpp"
#include "bishop/perturb.hpp"
#include "bishop/report.hpp"
#include "bishop/topo.hpp"

namespace bishop {

AnalysisReport analyze(const RatExpr& f, const LocusParams& params);
/// Throws ParseError on malformed expressions.
AnalysisReport run_analyze(std::string_view expression, const LocusParams& params);
AnalysisReport run_example(const ExampleSpec& spec, const LocusParams& params);

/// CSV with header component_id,index,x,y,z,gamma,class; gamma is "inf" for
/// infinity and empty when degenerate. The pole defaults to select_pole().
std::string geometry_csv(const AnalysisReport& report, std::optional<SpherePoint> pole = std::nullopt);
void export_geometry(const AnalysisReport& report, std::optional<SpherePoint> pole, const std::filesystem::path& path);

/// Linking number of components i and j (by id) of a report.
double run_linking(const AnalysisReport& report, int i, int j);

/// Base analysis at epsilon = 0 against each epsilon in the list.
std::vector<DiffReport> run_perturb(const ExampleSpec& spec, const std::vector<double>& eps_list,
                                    const LocusParams& params);

std::string serialize(const std::vector<DiffReport>& diffs);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace bishop

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bishop/errors.hpp"
#include "bishop/shell.hpp"

namespace bishop {

namespace {

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

const LocusComponent& component_by_id(const AnalysisReport& r, int id) {
  for (const auto& c : r.components) {
    if (c.id == id) return c;
  }
  throw InvalidArgument("no component with id " + std::to_string(id));
}

}  // namespace

AnalysisReport analyze(const RatExpr& f, const LocusParams& params) {
  AnalysisReport r;
  r.expression = format_expr(f);
  r.params = params;
  r.tool_version = std::string(tool_version());
  LocusResult res = find_components(f, params);
  r.components = std::move(res.components);
  r.indeterminate_points = std::move(res.indeterminate_points);
  return r;
}

AnalysisReport run_analyze(std::string_view expression, const LocusParams& params) {
  return analyze(parse_expr(expression), params);
}

AnalysisReport run_example(const ExampleSpec& spec, const LocusParams& params) {
  AnalysisReport r = analyze(build_example(spec), params);
  r.notes = example_notes(spec);
  return r;
}

std::string geometry_csv(const AnalysisReport& report, std::optional<SpherePoint> pole) {
  const SpherePoint pl = pole ? *pole : select_pole(report.components);
  std::string out = "component_id,index,x,y,z,gamma,class\n";
  for (const auto& c : report.components) {
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      const R3Point q = stereographic_project(c.points[k], pl);
      std::string gamma;
      if (k < c.gammas.size() && c.gammas[k].gamma) {
        gamma = std::isinf(*c.gammas[k].gamma) ? "inf" : number(*c.gammas[k].gamma);
      }
      const std::string_view cls = k < c.classes.size() ? to_string(c.classes[k]) : to_string(TangentClass::degenerate);
      out += std::to_string(c.id) + ',' + std::to_string(k) + ',' + number(q.x) + ',' + number(q.y) + ',' +
             number(q.z) + ',' + gamma + ',' + std::string(cls) + '\n';
    }
  }
  return out;
}

void export_geometry(const AnalysisReport& report, std::optional<SpherePoint> pole, const std::filesystem::path& path) {
  write_text(path, geometry_csv(report, pole));
}

double run_linking(const AnalysisReport& report, int i, int j) {
  const SpherePoint pole = select_pole(report.components);
  return linking_number(project_component(component_by_id(report, i), pole),
                        project_component(component_by_id(report, j), pole));
}

std::vector<DiffReport> run_perturb(const ExampleSpec& spec, const std::vector<double>& eps_list,
                                    const LocusParams& params) {
  if (!supports_epsilon(spec.id)) {
    throw InvalidArgument("example '" + std::string(to_string(spec.id)) + "' has no epsilon parameter");
  }
  ExampleSpec base_spec = spec;
  base_spec.eps = 0.0;
  const AnalysisReport base = run_example(base_spec, params);
  std::vector<DiffReport> out;
  for (double eps : eps_list) {
    ExampleSpec s = spec;
    s.eps = eps;
    DiffReport d = compare_analyses(base, run_example(s, params), 2.0 * params.cluster_radius);
    d.epsilon = eps;
    out.push_back(d);
  }
  return out;
}

std::string serialize(const std::vector<DiffReport>& diffs) {
  using nlohmann::json;
  auto counts = [](const KindCounts& k) {
    return json{{"points", k.points}, {"curves", k.curves}, {"surfaces", k.surfaces}};
  };
  json a = json::array();
  for (const auto& d : diffs) {
    json j;
    j["epsilon"] = d.epsilon;
    j["base_components"] = counts(d.base_components);
    j["perturbed_components"] = counts(d.perturbed_components);
    j["base_degenerate"] = d.base_degenerate;
    j["perturbed_degenerate"] = d.perturbed_degenerate;
    j["degeneracy_removed"] = d.degeneracy_removed;
    j["locus_unchanged"] = d.locus_unchanged;
    if (std::isinf(d.hausdorff_distance)) {
      j["hausdorff_distance"] = "inf";
    } else {
      j["hausdorff_distance"] = d.hausdorff_distance;
    }
    a.push_back(std::move(j));
  }
  return a.dump(1) + "\n";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace bishop

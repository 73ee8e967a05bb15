#include <cmath>
#include <limits>

#include <json.hpp>

#include "bishop/errors.hpp"
#include "bishop/report.hpp"

namespace bishop {

using nlohmann::json;

namespace {

json point_json(const SpherePoint& p) { return json::array({p.z.real(), p.z.imag(), p.w.real(), p.w.imag()}); }

SpherePoint point_from(const json& j) {
  if (!j.is_array() || j.size() != 4) throw InvalidArgument("a point is an array of four numbers");
  return {{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
}

json points_json(const std::vector<SpherePoint>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

std::vector<SpherePoint> points_from(const json& j) {
  std::vector<SpherePoint> out;
  for (const auto& e : j) out.push_back(point_from(e));
  return out;
}

json gamma_json(const GammaResult& g) {
  json j;
  j["numerator_norm"] = g.numerator_norm;
  j["denominator_norm"] = g.denominator_norm;
  if (!g.gamma) {
    j["gamma"] = nullptr;
  } else if (std::isinf(*g.gamma)) {
    j["gamma"] = "inf";
  } else {
    j["gamma"] = *g.gamma;
  }
  j["degenerate"] = g.degenerate;
  return j;
}

GammaResult gamma_from(const json& j) {
  GammaResult g;
  g.numerator_norm = j.at("numerator_norm").get<double>();
  g.denominator_norm = j.at("denominator_norm").get<double>();
  g.degenerate = j.at("degenerate").get<bool>();
  const json& v = j.at("gamma");
  if (v.is_null()) {
    g.gamma.reset();
  } else if (v.is_string()) {
    if (v.get<std::string>() != "inf") throw InvalidArgument("gamma string must be \"inf\"");
    g.gamma = std::numeric_limits<double>::infinity();
  } else {
    g.gamma = v.get<double>();
  }
  return g;
}

json component_json(const LocusComponent& c) {
  json j;
  j["id"] = c.id;
  j["kind"] = std::string(to_string(c.kind));
  j["closed"] = c.closed;
  j["partial"] = c.partial;
  j["points"] = points_json(c.points);
  json gs = json::array();
  for (const auto& g : c.gammas) gs.push_back(gamma_json(g));
  j["gammas"] = std::move(gs);
  json cls = json::array();
  for (auto k : c.classes) cls.push_back(std::string(to_string(k)));
  j["classes"] = std::move(cls);
  j["degenerate_points"] = points_json(c.degenerate_points);
  return j;
}

LocusComponent component_from(const json& j) {
  LocusComponent c;
  c.id = j.at("id").get<int>();
  c.kind = locus_kind_from_string(j.at("kind").get<std::string>());
  c.closed = j.at("closed").get<bool>();
  c.partial = j.at("partial").get<bool>();
  c.points = points_from(j.at("points"));
  for (const auto& g : j.at("gammas")) c.gammas.push_back(gamma_from(g));
  for (const auto& k : j.at("classes")) c.classes.push_back(tangent_class_from_string(k.get<std::string>()));
  c.degenerate_points = points_from(j.at("degenerate_points"));
  return c;
}

json params_json(const LocusParams& p) {
  json j;
  j["sample_count"] = p.sample_count;
  j["newton_tol"] = p.newton_tol;
  j["newton_max_iter"] = p.newton_max_iter;
  j["trace_step"] = p.trace_step;
  j["closure_tol"] = p.closure_tol;
  j["cluster_radius"] = p.cluster_radius;
  j["rank_tol"] = p.rank_tol;
  j["surface_cap"] = p.surface_cap;
  return j;
}

LocusParams params_from(const json& j, const json& tol, std::uint64_t seed) {
  LocusParams p;
  p.sample_count = j.at("sample_count").get<std::size_t>();
  p.newton_tol = j.at("newton_tol").get<double>();
  p.newton_max_iter = j.at("newton_max_iter").get<int>();
  p.trace_step = j.at("trace_step").get<double>();
  p.closure_tol = j.at("closure_tol").get<double>();
  p.cluster_radius = j.at("cluster_radius").get<double>();
  p.rank_tol = j.at("rank_tol").get<double>();
  p.surface_cap = j.at("surface_cap").get<std::size_t>();
  p.rng_seed = seed;
  p.tolerances.tau_zero = tol.at("tau_zero").get<double>();
  p.tolerances.tau_den = tol.at("tau_den").get<double>();
  p.tolerances.tau_sphere = tol.at("tau_sphere").get<double>();
  p.tolerances.class_band = tol.at("class_band").get<double>();
  return p;
}

}  // namespace

std::string_view tool_version() { return BISHOP_VERSION; }

std::string serialize(const AnalysisReport& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["expression"] = r.expression;
  j["rng_seed"] = r.params.rng_seed;
  json tol;
  tol["tau_zero"] = r.params.tolerances.tau_zero;
  tol["tau_den"] = r.params.tolerances.tau_den;
  tol["tau_sphere"] = r.params.tolerances.tau_sphere;
  tol["class_band"] = r.params.tolerances.class_band;
  j["tolerances"] = std::move(tol);
  j["params"] = params_json(r.params);
  j["notes"] = r.notes;
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(component_json(c));
  j["components"] = std::move(comps);
  j["indeterminate_points"] = points_json(r.indeterminate_points);
  return j.dump(1) + "\n";
}

AnalysisReport deserialize(std::string_view text) {
  try {
    const json j = json::parse(text);
    AnalysisReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.expression = j.at("expression").get<std::string>();
    r.params = params_from(j.at("params"), j.at("tolerances"), j.at("rng_seed").get<std::uint64_t>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& c : j.at("components")) r.components.push_back(component_from(c));
    r.indeterminate_points = points_from(j.at("indeterminate_points"));
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace bishop

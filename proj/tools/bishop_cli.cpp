// Command line front end: analyze expressions or built-in examples, compute
// linking numbers from saved reports, run epsilon perturbations.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bishop/errors.hpp"
#include "bishop/shell.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitEmpty = 3;

struct SharedOptions {
  std::size_t samples = bishop::LocusParams{}.sample_count;
  std::uint64_t seed = bishop::LocusParams{}.rng_seed;
  double step = bishop::LocusParams{}.trace_step;
  double tol = bishop::LocusParams{}.newton_tol;
};

void add_shared(CLI::App* cmd, SharedOptions& o) {
  cmd->add_option("--samples", o.samples, "Sphere samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--step", o.step, "Curve tracing step")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "Newton residual tolerance (relative)")->check(CLI::PositiveNumber);
}

bishop::LocusParams make_params(const SharedOptions& o) {
  bishop::LocusParams p;
  p.sample_count = o.samples;
  p.rng_seed = o.seed;
  p.trace_step = o.step;
  p.closure_tol = 3.0 * o.step;
  p.newton_tol = o.tol;
  return p;
}

void summarize(const bishop::AnalysisReport& r) {
  std::cout << "f = " << r.expression << "\n";
  for (const auto& c : r.components) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& g : c.gammas) {
      if (!g.gamma) continue;
      lo = std::min(lo, *g.gamma);
      hi = std::max(hi, *g.gamma);
    }
    std::cout << "component " << c.id << ": " << bishop::to_string(c.kind) << ", " << c.points.size() << " points";
    if (c.kind == bishop::LocusKind::curve) std::cout << (c.closed ? ", closed" : ", open");
    if (c.partial) std::cout << ", partial";
    if (lo <= hi) std::cout << ", gamma in [" << lo << ", " << hi << "]";
    if (!c.degenerate_points.empty()) std::cout << ", " << c.degenerate_points.size() << " degenerate";
    std::cout << "\n";
  }
  if (!r.indeterminate_points.empty()) std::cout << r.indeterminate_points.size() << " indeterminate points\n";
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw bishop::InvalidArgument("bad number '" + item + "' in list");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex tangents and Bishop invariants of graphs over the 3-sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bishop::tool_version()));

  SharedOptions shared;

  auto* analyze = app.add_subcommand("analyze", "Analyze f(z, w, zb, wb) given as text");
  std::string expr, json_path, geometry_path;
  analyze->add_option("--expr", expr, "Expression, e.g. \"0.5*zb^2 + wb\"")->required();
  analyze->add_option("--json", json_path, "Report output path")->required();
  analyze->add_option("--geometry", geometry_path, "CSV geometry output path");
  add_shared(analyze, shared);

  auto* example = app.add_subcommand("example", "Analyze a built-in example");
  std::string name;
  bishop::ExampleSpec spec;
  example->add_option("name", name, "ex1 ex2 ex2c ex3 ex4 ex5 ex6 ex6b ex7 ex8 torus_surface")->required();
  example->add_option("--alpha", spec.alpha, "ex2 coefficient");
  example->add_option("--p", spec.p, "ex4 torus knot p");
  example->add_option("--q", spec.q, "ex4 torus knot q");
  example->add_option("--eps", spec.eps, "pole shift for ex6b ex7 ex8");
  example->add_option("--json", json_path, "Report output path")->required();
  example->add_option("--geometry", geometry_path, "CSV geometry output path");
  add_shared(example, shared);

  auto* linking = app.add_subcommand("linking", "Linking number of two components of a saved report");
  std::vector<int> pair;
  linking->add_option("--json", json_path, "Report path")->required()->check(CLI::ExistingFile);
  linking->add_option("--pair", pair, "Component ids I J")->required()->expected(2);

  auto* perturb = app.add_subcommand("perturb", "Compare an epsilon family against epsilon = 0");
  std::string eps_text;
  double jitter = 0.0;
  perturb->add_option("name", name, "ex6b ex7 ex8")->required();
  perturb->add_option("--eps", eps_text, "Comma separated epsilon values")->required();
  perturb->add_option("--json", json_path, "Output path")->required();
  perturb->add_option("--jitter", jitter, "Also report a seeded relative coefficient jitter of this size");
  add_shared(perturb, shared);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) {
      const auto report = bishop::run_analyze(expr, make_params(shared));
      bishop::write_text(json_path, bishop::serialize(report));
      if (!geometry_path.empty()) bishop::export_geometry(report, std::nullopt, geometry_path);
      summarize(report);
      return kExitOk;
    }
    if (example->parsed()) {
      spec.id = bishop::parse_example_id(name);
      const auto report = bishop::run_example(spec, make_params(shared));
      bishop::write_text(json_path, bishop::serialize(report));
      if (!geometry_path.empty()) bishop::export_geometry(report, std::nullopt, geometry_path);
      summarize(report);
      return report.components.empty() ? kExitEmpty : kExitOk;
    }
    if (linking->parsed()) {
      const auto report = bishop::deserialize(bishop::read_text(json_path));
      const double lk = bishop::run_linking(report, pair[0], pair[1]);
      std::printf("%.6f\n", lk);
      return kExitOk;
    }
    if (perturb->parsed()) {
      spec.id = bishop::parse_example_id(name);
      const auto params = make_params(shared);
      auto diffs = bishop::run_perturb(spec, parse_list(eps_text), params);
      if (jitter > 0.0) {
        bishop::ExampleSpec base = spec;
        base.eps = 0.0;
        const auto f = bishop::build_example(base);
        const auto r0 = bishop::analyze(f, params);
        const auto r1 = bishop::analyze(bishop::jitter_coefficients(f, jitter, params.rng_seed), params);
        diffs.push_back(bishop::compare_analyses(r0, r1, 2.0 * params.cluster_radius));
        diffs.back().epsilon = 0.0;
      }
      bishop::write_text(json_path, bishop::serialize(diffs));
      for (const auto& d : diffs) {
        std::cout << "eps " << d.epsilon << ": curves " << d.base_components.curves << " -> "
                  << d.perturbed_components.curves << ", points " << d.base_components.points << " -> "
                  << d.perturbed_components.points << ", degeneracy_removed " << d.degeneracy_removed
                  << ", locus_unchanged " << d.locus_unchanged << ", hausdorff " << d.hausdorff_distance << "\n";
      }
      return kExitOk;
    }
  } catch (const bishop::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

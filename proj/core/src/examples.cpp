#include <cmath>
#include <numeric>

#include "bishop/errors.hpp"
#include "bishop/examples.hpp"
#include "bishop/perturb.hpp"

namespace bishop {

namespace {

constexpr std::pair<ExampleId, std::string_view> kNames[] = {
    {ExampleId::ex1, "ex1"},   {ExampleId::ex2, "ex2"},   {ExampleId::ex2c, "ex2c"},
    {ExampleId::ex3, "ex3"},   {ExampleId::ex4, "ex4"},   {ExampleId::ex5, "ex5"},
    {ExampleId::ex6, "ex6"},   {ExampleId::ex6b, "ex6b"}, {ExampleId::ex7, "ex7"},
    {ExampleId::ex8, "ex8"},   {ExampleId::torus_surface, "torus_surface"},
};

PolyExpr poly(std::string_view text) { return parse_expr(text).residual(); }

}  // namespace

ExampleId parse_example_id(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  throw InvalidArgument("unknown example '" + std::string(name) + "'");
}

std::string_view to_string(ExampleId id) {
  for (const auto& [i, n] : kNames) {
    if (i == id) return n;
  }
  return "?";
}

const std::vector<ExampleId>& all_examples() {
  static const std::vector<ExampleId> ids = [] {
    std::vector<ExampleId> v;
    for (const auto& [id, n] : kNames) v.push_back(id);
    return v;
  }();
  return ids;
}

bool supports_epsilon(ExampleId id) { return id == ExampleId::ex6b || id == ExampleId::ex7 || id == ExampleId::ex8; }

void validate(const ExampleSpec& spec) {
  if (!std::isfinite(spec.alpha) || spec.alpha < 0.0) throw InvalidArgument("alpha must be finite and >= 0");
  if (!std::isfinite(spec.eps) || spec.eps < 0.0) throw InvalidArgument("eps must be finite and >= 0");
  if (spec.id == ExampleId::ex4) {
    if (spec.p < 1 || spec.q < 1) throw InvalidArgument("p and q must be positive");
    if (std::gcd(spec.p, spec.q) != 1) throw NotCoprime("p and q must be coprime");
  }
}

RatExpr build_example(const ExampleSpec& spec) {
  validate(spec);
  switch (spec.id) {
    case ExampleId::ex1: return parse_expr("0.5*zb^2 + wb");
    case ExampleId::ex2:
      return RatExpr::constant(spec.alpha) * pow(RatExpr::variable(Var::zb), 2) + RatExpr::variable(Var::wb);
    case ExampleId::ex2c: return parse_expr("wb^2");
    case ExampleId::ex3: return parse_expr("zb^2*w + wb^2*z");
    case ExampleId::ex4: return build_torus_knot_map(spec.p, spec.q);
    case ExampleId::ex5: return parse_expr("z*wb^2 + zb*wb");
    case ExampleId::ex6: return parse_expr("i*zb*(1 - w)^3/(wb - 1)");
    case ExampleId::ex6b: return build_pole_family({poly("zb"), 1, 3, spec.eps});
    case ExampleId::ex7: return build_pole_family({poly("wb"), 1, 3, spec.eps});
    case ExampleId::ex8: return build_pole_family({poly("zb*wb"), 2, 3, spec.eps});
    case ExampleId::torus_surface: return parse_expr("zb*wb");
  }
  throw InvalidArgument("unknown example");
}

std::vector<std::string> example_notes(const ExampleSpec& spec) {
  std::vector<std::string> notes;
  switch (spec.id) {
    case ExampleId::ex2:
      if (spec.alpha > 0.0 && spec.alpha < 0.5) {
        notes.push_back("|w| = 1/(2 alpha) > 1 lies off the sphere: only the curve z = 0 exists");
      } else if (spec.alpha > 0.5) {
        notes.push_back(
            "on the curve |w| = 1/(2 alpha) the invariant is gamma = 1/(8 alpha^2); the value 1/(4 alpha) "
            "quoted in some derivations does not match a finite-difference evaluation");
      }
      break;
    case ExampleId::ex5:
      notes.push_back(
          "on the curve |z|^2 = x the invariant is |2x^2 + 2x - 1| / (4 (1 - x)^(3/2)), about 0.126 and 7.94; "
          "the values x / (4 (1 - x)) come from restricting L f to the locus before differentiating");
      break;
    default:
      break;
  }
  return notes;
}

}  // namespace bishop

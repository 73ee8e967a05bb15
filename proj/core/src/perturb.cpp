#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "bishop/errors.hpp"
#include "bishop/perturb.hpp"

namespace bishop {

namespace {

std::vector<SpherePoint> all_points(const AnalysisReport& r) {
  std::vector<SpherePoint> out;
  for (const auto& c : r.components) out.insert(out.end(), c.points.begin(), c.points.end());
  return out;
}

double directed(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) {
      best = std::min(best, distance(p, q));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

PolyExpr jitter_poly(const PolyExpr& p, double rel, std::mt19937_64& rng) {
  std::vector<Monomial> terms = p.terms();
  for (auto& t : terms) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    t.coeff *= 1.0 + rel * (2.0 * u - 1.0);
  }
  return PolyExpr::from_terms(std::move(terms));
}

}  // namespace

RatExpr build_pole_family(const PoleFamilySpec& spec) {
  if (spec.n < 0) throw InvalidArgument("pole order n must be non-negative");
  if (spec.r <= 2) throw InvalidArgument("r must exceed 2");
  if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) throw InvalidArgument("epsilon must be finite and >= 0");
  const PolyExpr c = PolyExpr::constant(1.0 + spec.epsilon);
  const PolyExpr num_base = c - PolyExpr::variable(Var::w);
  const PolyExpr den_base = c - PolyExpr::variable(Var::wb);
  RatExpr f = RatExpr::tracked(num_base, spec.n + spec.r) * RatExpr(spec.p);
  if (spec.n > 0) f = f * RatExpr::tracked(den_base, -spec.n);
  return f;
}

RatExpr build_torus_knot_map(int p, int q) {
  if (p < 1 || q < 1) throw InvalidArgument("torus knot parameters must be positive");
  if (std::gcd(p, q) != 1) throw NotCoprime("torus knot parameters must be coprime");
  Exponents a, b;
  a[Var::z] = static_cast<std::uint16_t>(p - 1);
  a[Var::wb] = 1;
  b[Var::w] = static_cast<std::uint16_t>(q - 1);
  b[Var::zb] = 1;
  return RatExpr(PolyExpr::from_terms({{1.0, a}, {1.0, b}}));
}

RatExpr jitter_coefficients(const RatExpr& f, double rel, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return RatExpr(jitter_poly(f.residual(), rel, rng), f.factors());
}

KindCounts count_kinds(const std::vector<LocusComponent>& comps) {
  KindCounts k;
  for (const auto& c : comps) {
    switch (c.kind) {
      case LocusKind::point: ++k.points; break;
      case LocusKind::curve: ++k.curves; break;
      case LocusKind::surface: ++k.surfaces; break;
    }
  }
  return k;
}

double hausdorff_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  return std::max(directed(a, b), directed(b, a));
}

bool has_degenerate(const AnalysisReport& r) {
  for (const auto& c : r.components) {
    if (!c.degenerate_points.empty()) return true;
    for (auto cls : c.classes) {
      if (cls == TangentClass::degenerate) return true;
    }
  }
  return false;
}

DiffReport compare_analyses(const AnalysisReport& base, const AnalysisReport& pert, double tol_match) {
  DiffReport d;
  d.base_components = count_kinds(base.components);
  d.perturbed_components = count_kinds(pert.components);
  d.base_degenerate = has_degenerate(base);
  d.perturbed_degenerate = has_degenerate(pert);
  d.degeneracy_removed = d.base_degenerate && !d.perturbed_degenerate;
  d.hausdorff_distance = hausdorff_distance(all_points(base), all_points(pert));
  d.locus_unchanged = d.hausdorff_distance <= tol_match;
  return d;
}

}  // namespace bishop

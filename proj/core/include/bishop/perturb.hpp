#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bishop/expr.hpp"
#include "bishop/report.hpp"

namespace bishop {

/// f = (1 + eps - w)^(n + r) / (1 + eps - wb)^n * p.
struct PoleFamilySpec {
  PolyExpr p;
  int n = 1;
  int r = 3;
  double epsilon = 0.0;
};

/// Throws InvalidArgument unless n >= 0, r > 2 and epsilon >= 0.
RatExpr build_pole_family(const PoleFamilySpec& spec);

/// z^(p-1) wb + w^(q-1) zb, whose L-image is z^p - w^q. Throws NotCoprime,
/// InvalidArgument for p or q < 1.
RatExpr build_torus_knot_map(int p, int q);

/// Every coefficient multiplied by (1 + u), u uniform in [-rel, rel] from a
/// seeded generator; factor bases are left alone.
RatExpr jitter_coefficients(const RatExpr& f, double rel, std::uint64_t seed);

struct KindCounts {
  int points = 0;
  int curves = 0;
  int surfaces = 0;

  friend bool operator==(const KindCounts&, const KindCounts&) = default;
};

KindCounts count_kinds(const std::vector<LocusComponent>& comps);

struct DiffReport {
  KindCounts base_components;
  KindCounts perturbed_components;
  bool base_degenerate = false;
  bool perturbed_degenerate = false;
  bool degeneracy_removed = false;
  bool locus_unchanged = false;
  double hausdorff_distance = 0.0;
  double epsilon = 0.0;
};

/// Symmetric Hausdorff distance in R^4; 0 for two empty sets, infinity when
/// exactly one is empty.
double hausdorff_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b);

/// True when any component carries a degenerate point or class.
bool has_degenerate(const AnalysisReport& r);

DiffReport compare_analyses(const AnalysisReport& base, const AnalysisReport& pert, double tol_match);

}  // namespace bishop

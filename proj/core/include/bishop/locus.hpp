#pragma once

// Zero set of B on the 3-sphere: sampling, Newton refinement, rank
// classification, curve tracing and surface growth.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "bishop/croper.hpp"
#include "bishop/expr.hpp"
#include "bishop/sphere.hpp"

namespace bishop {

enum class LocusKind { point, curve, surface };

std::string_view to_string(LocusKind k);
LocusKind locus_kind_from_string(std::string_view s);

struct LocusParams {
  std::size_t sample_count = 20000;
  std::uint64_t rng_seed = 1;
  double newton_tol = 1e-11;
  int newton_max_iter = 50;
  double trace_step = 0.01;
  double closure_tol = 0.03;
  double cluster_radius = 0.02;
  double rank_tol = 1e-5;
  /// Upper bound on points grown on a 2-dimensional component.
  std::size_t surface_cap = 20000;
  Tolerances tolerances;

  friend bool operator==(const LocusParams&, const LocusParams&) = default;
};

struct LocusComponent {
  int id = 0;
  LocusKind kind = LocusKind::point;
  std::vector<SpherePoint> points;
  bool closed = false;
  /// Tracing stopped early (step collapse or point cap).
  bool partial = false;
  std::vector<GammaResult> gammas;
  std::vector<TangentClass> classes;
  std::vector<SpherePoint> degenerate_points;

  friend bool operator==(const LocusComponent&, const LocusComponent&) = default;
};

struct LocusResult {
  std::vector<LocusComponent> components;
  /// Converged points sitting on an untracked pole of B.
  std::vector<SpherePoint> indeterminate_points;

  friend bool operator==(const LocusResult&, const LocusResult&) = default;
};

/// The zero set of B as a polynomial system. Denominator bases are dropped;
/// a numerator base is kept once unless its conjugate partner in the
/// denominator has at least the same power, so the zero set is that of B on
/// the sphere away from untracked poles.
class LocusEquation {
 public:
  explicit LocusEquation(RatExpr b);

  const RatExpr& b() const { return b_; }
  const PolyExpr& polynomial() const { return n_; }
  double scale() const { return scale_; }

  Complex value(const SpherePoint& p) const;
  /// N(p) and the real gradients of Re N and Im N in (Re z, Im z, Re w, Im w).
  Complex gradient(const SpherePoint& p, R4& grad_re, R4& grad_im) const;
  /// True when p is an untracked pole of B.
  bool is_pole(const SpherePoint& p, double tau_den) const;
  /// |N(p)| <= tol * scale().
  bool vanishes(const SpherePoint& p, double tol) const;

 private:
  struct Part {
    PolyExpr poly;
    std::array<PolyExpr, 4> d;
  };

  RatExpr b_;
  PolyExpr n_;
  // N = prod of parts, evaluated unexpanded to keep high-order zeros sharp.
  std::vector<Part> parts_;
  double scale_ = 0.0;
};

enum class RefineStatus { converged, failed, pole };

struct RefineResult {
  RefineStatus status = RefineStatus::failed;
  SpherePoint point;
  int iterations = 0;
};

/// Gauss-Newton on N = 0 restricted to the sphere.
RefineResult refine_to_locus(const LocusEquation& eq, const SpherePoint& start, const LocusParams& params);
RefineResult refine_to_locus(const RatExpr& b, const SpherePoint& start, const LocusParams& params);

/// Singular values of the 3x4 constraint Jacobian (N rows normalized by
/// scale, sphere row by 2), descending.
std::array<double, 3> constraint_singular_values(const LocusEquation& eq, const SpherePoint& p);

/// Dimension of the zero set at a point already on it. Rank-deficient points
/// are resolved by looking for nearby zeros along tangent directions.
LocusKind local_rank(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params);
LocusKind local_rank(const RatExpr& b, const SpherePoint& p, const LocusParams& params);

/// Traces the component through a seed on a 1-dimensional part of the locus.
/// Throws StepCollapse when no step can be taken from the seed at all.
LocusComponent trace_component(const RatExpr& b, const SpherePoint& seed, const LocusParams& params);

/// Full analysis of graph(f): components sorted by kind and lexicographic
/// minimum point, with gammas, classes and degenerate points filled in.
LocusResult find_components(const RatExpr& f, const LocusParams& params = {});

/// Degenerate tangents on the given components (gamma-degenerate sample
/// points plus minima of the normalized gamma norms along curves).
std::vector<SpherePoint> detect_degenerate(const RatExpr& f, const std::vector<LocusComponent>& components,
                                           const LocusParams& params = {});

/// Runs body(i) for i in [0, n) on the hardware threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bishop

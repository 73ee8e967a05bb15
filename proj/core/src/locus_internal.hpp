#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bishop/locus.hpp"

namespace bishop::detail {

struct TracedCurve {
  std::vector<SpherePoint> points;
  bool closed = false;
  bool partial = false;
};

/// Unit curve tangent at p. Where the constraint Jacobian has a 2-dimensional
/// kernel (a curve along which Re N and Im N are not transversal) the
/// direction inside the kernel comes from `hint` when given, otherwise from
/// probing which kernel direction stays on the zero set.
R4 curve_tangent(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params, const R4* hint = nullptr);

/// True when the zero set around a rank-2 point extends in every direction of
/// the kernel plane.
bool surface_confirmed(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params);

TracedCurve trace_curve(const LocusEquation& eq, const SpherePoint& seed, const LocusParams& params);

std::vector<SpherePoint> grow_surface(const LocusEquation& eq, const SpherePoint& seed, const LocusParams& params);

/// Zero of the equation found near p along a tangent direction, if the zero
/// set extends away from p.
std::optional<SpherePoint> probe_extension(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params);

/// Bucket grid over R^4 for radius queries.
class PointGrid {
 public:
  explicit PointGrid(double cell) : cell_(cell) {}
  void insert(const R4& x, std::size_t index);
  /// Calls visit(index) for every stored point in cells neighbouring x.
  template <typename F>
  void visit_near(const R4& x, F&& visit) const;
  bool any_within(const R4& x, double radius, const std::vector<R4>& coords) const;

 private:
  using Key = std::array<long, 4>;
  Key key(const R4& x) const;
  double cell_;
  std::map<Key, std::vector<std::size_t>> cells_;
};

template <typename F>
void PointGrid::visit_near(const R4& x, F&& visit) const {
  const Key k = key(x);
  Key n;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int d = -1; d <= 1; ++d) {
          n = {k[0] + a, k[1] + b, k[2] + c, k[3] + d};
          auto it = cells_.find(n);
          if (it == cells_.end()) continue;
          for (std::size_t i : it->second) visit(i);
        }
}

}  // namespace bishop::detail

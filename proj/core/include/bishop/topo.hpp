#pragma once

#include <vector>

#include "bishop/locus.hpp"
#include "bishop/sphere.hpp"

namespace bishop {

inline constexpr double kPoleDelta = 1e-3;

struct R3Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const R3Point&, const R3Point&) = default;
};

struct ProjectedComponent {
  int source_id = 0;
  std::vector<R3Point> points;
  bool closed = false;
};

/// Stereographic projection from `pole`: the sphere is first rotated (right
/// quaternion multiplication by conj(pole)) so that the pole goes to
/// (0, 0, 0, 1). Throws PoleTooClose within `delta` of the pole.
R3Point stereographic_project(const SpherePoint& p, const SpherePoint& pole, double delta = kPoleDelta);
SpherePoint unproject(const R3Point& q, const SpherePoint& pole);

ProjectedComponent project_component(const LocusComponent& c, const SpherePoint& pole);

/// First of 64 fixed candidates, starting (0,1), (0,-1), (1,0), (-1,0), at
/// distance >= 10 delta from every component point. Throws NoPoleFound.
SpherePoint select_pole(const std::vector<LocusComponent>& comps, double delta = kPoleDelta);
const std::vector<SpherePoint>& pole_candidates();

/// Closed polyline resampled to n points equally spaced in arc length.
std::vector<R3Point> resample_closed(const std::vector<R3Point>& pts, std::size_t n);

/// Gauss linking number of two closed polylines, summed exactly over segment
/// pairs as signed solid angles. Curves are resampled to between 2000 and
/// 4000 points first. Throws NotClosed, CurvesTooClose (< min_distance).
double linking_number(const ProjectedComponent& a, const ProjectedComponent& b, double min_distance = kPoleDelta);

}  // namespace bishop

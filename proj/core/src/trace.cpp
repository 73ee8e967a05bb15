#include <cmath>
#include <deque>
#include <numbers>

#include "bishop/errors.hpp"
#include "locus_internal.hpp"

namespace bishop::detail {

namespace {

constexpr double kMinStep = 1e-6;
constexpr double kMinAlignment = 0.5;
constexpr std::size_t kMaxCurvePoints = 200000;

double dot(const R4& a, const R4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

R4 step_from(const SpherePoint& p, const R4& t, double h) {
  R4 x = to_r4(p);
  for (int k = 0; k < 4; ++k) x[k] += h * t[k];
  return x;
}

R4 oriented(R4 t, const R4& reference) {
  if (dot(t, reference) < 0.0) {
    for (auto& v : t) v = -v;
  }
  return t;
}

struct March {
  std::vector<SpherePoint> points;  // excludes the start point
  bool closed = false;
  bool collapsed = false;
};

March march(const LocusEquation& eq, const SpherePoint& start, R4 t, const LocusParams& params) {
  March m;
  const double h0 = params.trace_step;
  double h = h0;
  double arc = 0.0;
  SpherePoint p = start;
  double prev_gap = distance(p, start);
  bool inside = false;

  while (m.points.size() < kMaxCurvePoints) {
    bool accepted = false;
    SpherePoint next;
    R4 next_t{};
    while (h >= kMinStep) {
      const RefineResult r = refine_to_locus(eq, normalized(step_from(p, t, h)), params);
      if (r.status == RefineStatus::converged) {
        const double d = distance(r.point, p);
        R4 chord = to_r4(r.point);
        const R4 x = to_r4(p);
        for (int k = 0; k < 4; ++k) chord[k] -= x[k];
        const R4 nt = oriented(curve_tangent(eq, r.point, params, &chord), t);
        if (d >= 0.3 * h && d <= 2.0 * h && dot(nt, t) >= kMinAlignment && dot(chord, t) > 0.0) {
          next = r.point;
          next_t = nt;
          accepted = true;
          break;
        }
      }
      h *= 0.5;
    }
    if (!accepted) {
      m.collapsed = true;
      return m;
    }

    const double gap = distance(next, start);
    arc += distance(next, p);
    if (arc > 4.0 * params.closure_tol && gap < params.closure_tol) {
      if (inside && gap > prev_gap) {
        m.closed = true;
        break;
      }
      inside = true;
    }
    m.points.push_back(next);
    prev_gap = gap;
    p = next;
    t = next_t;
    h = std::min(h0, 1.5 * h);
  }
  if (m.closed) {
    // Drop a final point crowding the start.
    if (!m.points.empty() && distance(m.points.back(), start) < 0.2 * h0) m.points.pop_back();
  }
  return m;
}

}  // namespace

TracedCurve trace_curve(const LocusEquation& eq, const SpherePoint& seed, const LocusParams& params) {
  TracedCurve out;
  const R4 t0 = curve_tangent(eq, seed, params);
  March fwd = march(eq, seed, t0, params);
  if (fwd.closed) {
    out.points.reserve(fwd.points.size() + 1);
    out.points.push_back(seed);
    out.points.insert(out.points.end(), fwd.points.begin(), fwd.points.end());
    out.closed = true;
    return out;
  }
  R4 back_t = t0;
  for (auto& v : back_t) v = -v;
  March bwd = march(eq, seed, back_t, params);
  out.points.assign(bwd.points.rbegin(), bwd.points.rend());
  out.points.push_back(seed);
  out.points.insert(out.points.end(), fwd.points.begin(), fwd.points.end());
  out.partial = true;
  return out;
}

std::vector<SpherePoint> grow_surface(const LocusEquation& eq, const SpherePoint& seed, const LocusParams& params) {
  const double s = 5.0 * params.trace_step;
  std::vector<SpherePoint> cloud{seed};
  std::vector<R4> coords{to_r4(seed)};
  PointGrid grid(s);
  grid.insert(coords.front(), 0);
  std::deque<std::size_t> queue{0};

  while (!queue.empty() && cloud.size() < params.surface_cap) {
    const SpherePoint p = cloud[queue.front()];
    queue.pop_front();
    // Tangent plane of the surface: the two weakest right singular directions
    // orthogonal to the normal, taken from the sphere frame.
    const auto frame = tangent_frame(p);
    R4 gr, gi;
    eq.gradient(p, gr, gi);
    const R4& g = dot(gr, gr) >= dot(gi, gi) ? gr : gi;
    // Project the dominant gradient into the frame and take its complement.
    double c[3];
    for (int k = 0; k < 3; ++k) c[k] = dot(g, frame[k]);
    const double cn = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
    if (cn == 0.0) continue;
    for (double& v : c) v /= cn;
    // Any unit vector orthogonal to c, then their cross product.
    double u[3] = {0.0, 0.0, 0.0};
    const int smallest = std::abs(c[0]) <= std::abs(c[1]) ? (std::abs(c[0]) <= std::abs(c[2]) ? 0 : 2)
                                                          : (std::abs(c[1]) <= std::abs(c[2]) ? 1 : 2);
    u[smallest] = 1.0;
    const double uc = u[0] * c[0] + u[1] * c[1] + u[2] * c[2];
    for (int k = 0; k < 3; ++k) u[k] -= uc * c[k];
    const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (double& v : u) v /= un;
    const double v3[3] = {c[1] * u[2] - c[2] * u[1], c[2] * u[0] - c[0] * u[2], c[0] * u[1] - c[1] * u[0]};

    for (int k = 0; k < 6 && cloud.size() < params.surface_cap; ++k) {
      const double a = k * std::numbers::pi / 3.0;
      R4 dir{};
      for (int j = 0; j < 4; ++j) {
        dir[j] = std::cos(a) * (u[0] * frame[0][j] + u[1] * frame[1][j] + u[2] * frame[2][j]) +
                 std::sin(a) * (v3[0] * frame[0][j] + v3[1] * frame[1][j] + v3[2] * frame[2][j]);
      }
      const RefineResult r = refine_to_locus(eq, normalized(step_from(p, dir, s)), params);
      if (r.status != RefineStatus::converged) continue;
      const R4 x = to_r4(r.point);
      if (distance(r.point, p) > 2.0 * s || grid.any_within(x, 0.6 * s, coords)) continue;
      cloud.push_back(r.point);
      coords.push_back(x);
      grid.insert(x, cloud.size() - 1);
      queue.push_back(cloud.size() - 1);
    }
  }
  return cloud;
}

void PointGrid::insert(const R4& x, std::size_t index) { cells_[key(x)].push_back(index); }

bool PointGrid::any_within(const R4& x, double radius, const std::vector<R4>& coords) const {
  bool found = false;
  visit_near(x, [&](std::size_t i) {
    if (!found && distance(x, coords[i]) <= radius) found = true;
  });
  return found;
}

PointGrid::Key PointGrid::key(const R4& x) const {
  return {static_cast<long>(std::floor(x[0] / cell_)), static_cast<long>(std::floor(x[1] / cell_)),
          static_cast<long>(std::floor(x[2] / cell_)), static_cast<long>(std::floor(x[3] / cell_))};
}

}  // namespace bishop::detail

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bishop/errors.hpp"
#include "bishop/topo.hpp"

namespace bishop {

namespace {

using Quat = std::array<double, 4>;

Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Quat qconj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

struct V3 {
  double x, y, z;
};

V3 sub(const R3Point& a, const R3Point& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
V3 cross(const V3& a, const V3& b) { return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x}; }
double dot(const V3& a, const V3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const V3& a) { return std::sqrt(dot(a, a)); }

double point_distance(const R3Point& a, const R3Point& b) { return norm(sub(a, b)); }

double asin_clamped(double v) { return std::asin(std::clamp(v, -1.0, 1.0)); }

// Signed solid angle subtended by segment pair (p1, p2), (p3, p4) divided by
// 4 pi.
double segment_pair(const R3Point& p1, const R3Point& p2, const R3Point& p3, const R3Point& p4) {
  const V3 r13 = sub(p3, p1), r14 = sub(p4, p1), r23 = sub(p3, p2), r24 = sub(p4, p2);
  V3 n[4] = {cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
  for (auto& v : n) {
    const double l = norm(v);
    if (l == 0.0) return 0.0;
    v = {v.x / l, v.y / l, v.z / l};
  }
  const double omega = asin_clamped(dot(n[0], n[1])) + asin_clamped(dot(n[1], n[2])) +
                       asin_clamped(dot(n[2], n[3])) + asin_clamped(dot(n[3], n[0]));
  const double orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
  if (orient == 0.0) return 0.0;
  return (orient > 0.0 ? omega : -omega) / (4.0 * std::numbers::pi);
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

std::size_t resample_count(std::size_t n) { return std::min<std::size_t>(4000, std::max<std::size_t>(2000, n)); }

}  // namespace

R3Point stereographic_project(const SpherePoint& p, const SpherePoint& pole, double delta) {
  if (distance(p, pole) < delta) throw PoleTooClose("point lies within the pole exclusion radius");
  const Quat y = qmul(to_r4(p), qconj(to_r4(pole)));
  const double d = 1.0 - y[0];
  return {y[1] / d, y[2] / d, y[3] / d};
}

SpherePoint unproject(const R3Point& q, const SpherePoint& pole) {
  const double s = q.x * q.x + q.y * q.y + q.z * q.z;
  const Quat y = {(s - 1.0) / (s + 1.0), 2.0 * q.x / (s + 1.0), 2.0 * q.y / (s + 1.0), 2.0 * q.z / (s + 1.0)};
  return from_r4(qmul(y, to_r4(pole)));
}

ProjectedComponent project_component(const LocusComponent& c, const SpherePoint& pole) {
  ProjectedComponent out;
  out.source_id = c.id;
  out.closed = c.closed;
  out.points.reserve(c.points.size());
  for (const auto& p : c.points) out.points.push_back(stereographic_project(p, pole));
  return out;
}

const std::vector<SpherePoint>& pole_candidates() {
  static const std::vector<SpherePoint> list = [] {
    const Complex i(0.0, 1.0);
    std::vector<SpherePoint> c = {{0.0, 1.0}, {0.0, -1.0}, {1.0, 0.0}, {-1.0, 0.0},
                                  {0.0, i},   {0.0, -i},   {i, 0.0},   {-i, 0.0}};
    const auto extra = sample_sphere(56, 0x5eed);
    c.insert(c.end(), extra.begin(), extra.end());
    return c;
  }();
  return list;
}

SpherePoint select_pole(const std::vector<LocusComponent>& comps, double delta) {
  for (const auto& cand : pole_candidates()) {
    bool ok = true;
    for (const auto& c : comps) {
      for (const auto& p : c.points) {
        if (distance(p, cand) < 10.0 * delta) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return cand;
  }
  throw NoPoleFound("every pole candidate is too close to a component");
}

std::vector<R3Point> resample_closed(const std::vector<R3Point>& pts, std::size_t n) {
  const std::size_t m = pts.size();
  if (m < 2 || n == 0) return pts;
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) cum[k + 1] = cum[k] + point_distance(pts[k], pts[(k + 1) % m]);
  const double total = cum[m];
  std::vector<R3Point> out;
  out.reserve(n);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < m && cum[seg + 1] <= s) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    const R3Point& a = pts[seg];
    const R3Point& b = pts[(seg + 1) % m];
    out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)});
  }
  return out;
}

double linking_number(const ProjectedComponent& a, const ProjectedComponent& b, double min_distance) {
  if (!a.closed || !b.closed) throw NotClosed("linking number needs two closed curves");
  if (a.points.size() < 3 || b.points.size() < 3) throw NotClosed("closed curve with fewer than 3 points");
  const auto pa = resample_closed(a.points, resample_count(a.points.size()));
  const auto pb = resample_closed(b.points, resample_count(b.points.size()));
  const std::size_t na = pa.size(), nb = pb.size();

  std::vector<double> rows(na);
  std::vector<char> too_close(na, 0);
  parallel_for(na, [&](std::size_t i) {
    const R3Point& p1 = pa[i];
    const R3Point& p2 = pa[(i + 1) % na];
    std::vector<double> terms(nb);
    for (std::size_t j = 0; j < nb; ++j) {
      if (point_distance(p1, pb[j]) < min_distance) too_close[i] = 1;
      terms[j] = segment_pair(p1, p2, pb[j], pb[(j + 1) % nb]);
    }
    rows[i] = pairwise_sum(terms.data(), nb);
  });
  if (std::any_of(too_close.begin(), too_close.end(), [](char c) { return c != 0; })) {
    throw CurvesTooClose("curves come closer than the minimum separation");
  }
  return pairwise_sum(rows.data(), na);
}

}  // namespace bishop

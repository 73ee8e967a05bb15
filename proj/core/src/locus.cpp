#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include <Eigen/Dense>

#include "bishop/errors.hpp"
#include "bishop/locus.hpp"
#include "locus_internal.hpp"

namespace bishop {

namespace {

using Mat34 = Eigen::Matrix<double, 3, 4>;

constexpr double kTrustRadius = 0.1;
constexpr double kStepFloor = 1e-14;
constexpr double kWeakSingular = 1e-13;
constexpr double kScanThreshold = 1e-3;

std::optional<std::size_t> conjugate_partner(const std::vector<Factor>& fs, std::size_t i) {
  const PolyExpr cb = fs[i].base.conjugate();
  const PolyExpr monic = cb.scaled(1.0 / cb.leading().coeff);
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (j != i && fs[j].base == monic) return j;
  }
  return std::nullopt;
}

Mat34 constraint_matrix(const LocusEquation& eq, const SpherePoint& p) {
  R4 gr, gi;
  eq.gradient(p, gr, gi);
  const R4 x = to_r4(p);
  const double s = eq.scale() > 0.0 ? eq.scale() : 1.0;
  Mat34 m;
  for (int k = 0; k < 4; ++k) {
    m(0, k) = gr[k] / s;
    m(1, k) = gi[k] / s;
    m(2, k) = x[k];
  }
  return m;
}

struct Cluster {
  std::vector<std::size_t> members;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

enum class PointRank { curve, surface, singular };

PointRank classify_rank(const std::array<double, 3>& sv, double rank_tol) {
  if (sv[0] <= 0.0) return PointRank::singular;
  if (sv[2] / sv[0] > rank_tol) return PointRank::curve;
  if (sv[1] / sv[0] > rank_tol) return PointRank::surface;
  return PointRank::singular;
}

// Max of the two gamma norms, each relative to its cancellation-free scale.
double relative_gamma_norm(const GammaParts& parts, const SpherePoint& p, double tau_den) {
  const Modulus a = modulus_at(parts.second, p.z, p.w, tau_den);
  const Modulus b = modulus_at(parts.mixed, p.z, p.w, tau_den);
  const double ra = a.scale > 0.0 ? a.value / a.scale : 0.0;
  const double rb = b.scale > 0.0 ? b.value / b.scale : 0.0;
  return std::max(ra, rb);
}

SpherePoint lerp_on_sphere(const SpherePoint& a, const SpherePoint& b, double t) {
  const R4 x = to_r4(a), y = to_r4(b);
  R4 m;
  for (int k = 0; k < 4; ++k) m[k] = (1.0 - t) * x[k] + t * y[k];
  return normalized(m);
}

void add_unique(std::vector<SpherePoint>& out, const SpherePoint& p, double radius) {
  for (const auto& q : out) {
    if (distance(p, q) < radius) return;
  }
  out.push_back(p);
}

void fill_gammas(LocusComponent& c, const GammaParts& parts, const RatExpr& b, const LocusParams& params,
                 std::vector<SpherePoint>& indeterminate) {
  std::vector<SpherePoint> kept;
  c.gammas.clear();
  c.classes.clear();
  for (const auto& p : c.points) {
    try {
      GammaResult g = gamma_at(parts, b, p, params.tolerances);
      c.classes.push_back(classify(g, params.tolerances.class_band));
      c.gammas.push_back(g);
      kept.push_back(p);
    } catch (const PoleProximity&) {
      add_unique(indeterminate, p, params.cluster_radius);
    } catch (const NotATangent&) {
    }
  }
  c.points = std::move(kept);
}

// Isolated zeros are often of high order, where the Newton tolerance pins the
// location only loosely; iterate to the floating-point floor.
SpherePoint polish_point(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params) {
  LocusParams tight = params;
  tight.newton_tol = 0.0;
  tight.newton_max_iter = 400;
  const RefineResult r = refine_to_locus(eq, p, tight);
  return std::abs(eq.value(r.point)) <= std::abs(eq.value(p)) ? r.point : p;
}

void canonicalize(LocusComponent& c) {
  if (c.kind != LocusKind::curve || !c.closed || c.points.empty()) return;
  auto it = std::min_element(c.points.begin(), c.points.end(), lex_less);
  std::rotate(c.points.begin(), it, c.points.end());
}

}  // namespace

std::string_view to_string(LocusKind k) {
  switch (k) {
    case LocusKind::point: return "point";
    case LocusKind::curve: return "curve";
    case LocusKind::surface: return "surface";
  }
  return "point";
}

LocusKind locus_kind_from_string(std::string_view s) {
  for (auto k : {LocusKind::point, LocusKind::curve, LocusKind::surface}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown locus kind '" + std::string(s) + "'");
}

LocusEquation::LocusEquation(RatExpr b) : b_(std::move(b)) {
  std::vector<PolyExpr> polys{b_.residual()};
  const auto& fs = b_.factors();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].power <= 0) continue;
    const auto j = conjugate_partner(fs, i);
    bool include = true;
    if (j) {
      const int q = fs[*j].power;
      if (q < 0) {
        include = fs[i].power + q > 0;
      } else {
        include = i < *j;
      }
    }
    if (include) polys.push_back(fs[i].base);
  }
  n_ = PolyExpr::constant(1.0);
  for (auto& poly : polys) {
    n_ = n_ * poly;
    Part part{std::move(poly), {}};
    for (int v = 0; v < 4; ++v) part.d[v] = part.poly.derivative(static_cast<Var>(v));
    parts_.push_back(std::move(part));
  }
  scale_ = n_.scale();
}

Complex LocusEquation::value(const SpherePoint& p) const {
  Complex v = 1.0;
  for (const auto& part : parts_) v *= part.poly.evaluate(p.z, p.w);
  return v;
}

Complex LocusEquation::gradient(const SpherePoint& p, R4& grad_re, R4& grad_im) const {
  const std::size_t n = parts_.size();
  std::vector<Complex> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = parts_[k].poly.evaluate(p.z, p.w);
  // Prefix and suffix products give prod_{j != k} vals[j] without division.
  std::vector<Complex> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * vals[k];
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * vals[k];

  std::array<Complex, 4> dn{};
  for (std::size_t k = 0; k < n; ++k) {
    const Complex others = prefix[k] * suffix[k + 1];
    for (int v = 0; v < 4; ++v) {
      if (!parts_[k].d[v].is_zero()) dn[v] += others * parts_[k].d[v].evaluate(p.z, p.w);
    }
  }
  const Complex i(0.0, 1.0);
  const std::array<Complex, 4> g{dn[0] + dn[2], i * (dn[0] - dn[2]), dn[1] + dn[3], i * (dn[1] - dn[3])};
  for (int k = 0; k < 4; ++k) {
    grad_re[k] = g[k].real();
    grad_im[k] = g[k].imag();
  }
  return prefix[n];
}

bool LocusEquation::is_pole(const SpherePoint& p, double tau_den) const {
  try {
    (void)modulus_at(b_, p.z, p.w, tau_den);
    return false;
  } catch (const PoleProximity&) {
    return true;
  }
}

bool LocusEquation::vanishes(const SpherePoint& p, double tol) const { return std::abs(value(p)) <= tol * scale_; }

RefineResult refine_to_locus(const LocusEquation& eq, const SpherePoint& start, const LocusParams& params) {
  RefineResult r;
  r.point = normalized(to_r4(start));
  if (eq.scale() == 0.0) {
    r.status = RefineStatus::converged;
    return r;
  }
  const double target = params.newton_tol * eq.scale();

  // One Gauss-Newton step from r.point. Directions below rank_tol only
  // contribute bounded steps: they carry the slow descent into higher-order
  // zeros. Returns the step length, or -1 when the Jacobian vanishes.
  auto step = [&](bool allow_weak, bool& used_weak) -> double {
    used_weak = false;
    R4 gr, gi;
    const Complex n = eq.gradient(r.point, gr, gi);
    const auto frame = tangent_frame(r.point);
    Eigen::Matrix<double, 2, 3> jt;
    for (int c = 0; c < 3; ++c) {
      double a = 0.0, b = 0.0;
      for (int k = 0; k < 4; ++k) {
        a += gr[k] * frame[c][k];
        b += gi[k] * frame[c][k];
      }
      jt(0, c) = a / eq.scale();
      jt(1, c) = b / eq.scale();
    }
    const Eigen::Vector2d f(n.real() / eq.scale(), n.imag() / eq.scale());
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(jt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0) return -1.0;
    Eigen::Vector3d delta = Eigen::Vector3d::Zero();
    for (int k = 0; k < 2; ++k) {
      if (sv(k) <= kWeakSingular * sv(0)) continue;
      const double c = svd.matrixU().col(k).dot(f) / sv(k);
      if (sv(k) <= params.rank_tol * sv(0)) {
        if (!allow_weak || std::abs(c) > kTrustRadius) continue;
        used_weak = true;
      }
      delta -= svd.matrixV().col(k) * c;
    }
    const double len = delta.norm();
    if (len > kTrustRadius) delta *= kTrustRadius / len;
    R4 x = to_r4(r.point);
    for (int k = 0; k < 4; ++k) x[k] += delta(0) * frame[0][k] + delta(1) * frame[1][k] + delta(2) * frame[2][k];
    r.point = normalized(x);
    return len;
  };

  // Once under target, polishing continues (with its own iteration budget)
  // only while |N| keeps shrinking, so it stops at the rounding floor.
  double prev = std::numeric_limits<double>::infinity();
  SpherePoint last = r.point;
  int polish = 0;
  for (int it = 0; it < params.newton_max_iter + polish; ++it) {
    r.iterations = it + 1;
    const double mod = std::abs(eq.value(r.point));
    if (prev <= target && !(mod < 0.9 * prev)) {
      r.point = last;
      break;
    }
    if (mod == 0.0) break;
    if (mod <= target && polish == 0) polish = params.newton_max_iter;
    prev = mod;
    last = r.point;
    bool weak = false;
    const double len = step(true, weak);
    if (len < 0.0) break;
    // A weak step drifts along the near-null directions; re-centre with the
    // well-conditioned ones before measuring progress.
    if (weak) step(false, weak);
    if (len <= kStepFloor) break;
  }
  if (!(std::abs(eq.value(r.point)) <= target)) {
    r.status = RefineStatus::failed;
    return r;
  }
  r.status = eq.is_pole(r.point, params.tolerances.tau_den) ? RefineStatus::pole : RefineStatus::converged;
  return r;
}

RefineResult refine_to_locus(const RatExpr& b, const SpherePoint& start, const LocusParams& params) {
  return refine_to_locus(LocusEquation(b), start, params);
}

std::array<double, 3> constraint_singular_values(const LocusEquation& eq, const SpherePoint& p) {
  Eigen::JacobiSVD<Mat34> svd(constraint_matrix(eq, p));
  const auto& s = svd.singularValues();
  return {s(0), s(1), s(2)};
}

namespace detail {

namespace {

R4 combine(const Eigen::Vector4d& a, const Eigen::Vector4d& b, double angle) {
  const Eigen::Vector4d d = std::cos(angle) * a + std::sin(angle) * b;
  return {d(0), d(1), d(2), d(3)};
}

R4 offset(const SpherePoint& p, const R4& d, double h) {
  R4 x = to_r4(p);
  for (int k = 0; k < 4; ++k) x[k] += h * d[k];
  return x;
}

}  // namespace

R4 curve_tangent(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params, const R4* hint) {
  Eigen::JacobiSVD<Mat34> svd(constraint_matrix(eq, p), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Vector4d v3 = svd.matrixV().col(3);
  if (sv(0) > 0.0 && sv(2) / sv(0) > params.rank_tol) return {v3(0), v3(1), v3(2), v3(3)};
  const Eigen::Vector4d v2 = svd.matrixV().col(2);
  if (hint) {
    const Eigen::Vector4d t(hint->data());
    const Eigen::Vector4d proj = v2 * v2.dot(t) + v3 * v3.dot(t);
    if (proj.norm() > 1e-12) {
      const Eigen::Vector4d u = proj.normalized();
      return {u(0), u(1), u(2), u(3)};
    }
  }
  constexpr int kAngles = 8;
  R4 best = {v3(0), v3(1), v3(2), v3(3)};
  double best_miss = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kAngles; ++k) {
    const R4 d = combine(v2, v3, k * std::numbers::pi / kAngles);
    const SpherePoint q = normalized(offset(p, d, params.trace_step));
    const RefineResult r = refine_to_locus(eq, q, params);
    if (r.status != RefineStatus::converged) continue;
    const double miss = distance(r.point, q);
    if (miss < best_miss) {
      best_miss = miss;
      best = d;
    }
  }
  return best;
}

bool surface_confirmed(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params) {
  Eigen::JacobiSVD<Mat34> svd(constraint_matrix(eq, p), Eigen::ComputeFullV);
  const Eigen::Vector4d v2 = svd.matrixV().col(2), v3 = svd.matrixV().col(3);
  const double s = 5.0 * params.trace_step;
  constexpr int kAngles = 4;
  for (int k = 0; k < kAngles; ++k) {
    const SpherePoint q = normalized(offset(p, combine(v2, v3, k * std::numbers::pi / kAngles), s));
    const RefineResult r = refine_to_locus(eq, q, params);
    if (r.status != RefineStatus::converged || distance(r.point, q) > 0.25 * s) return false;
  }
  return true;
}

std::optional<SpherePoint> probe_extension(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params) {
  const double h = params.trace_step;
  const auto frame = tangent_frame(p);
  const R4 x = to_r4(p);
  constexpr int kDirections = 16;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < kDirections; ++k) {
    const double y = 1.0 - 2.0 * (k + 0.5) / kDirections;
    const double r = std::sqrt(1.0 - y * y);
    const double a = golden * k;
    const double d[3] = {r * std::cos(a), y, r * std::sin(a)};
    R4 q;
    for (int c = 0; c < 4; ++c) q[c] = x[c] + 2.0 * h * (d[0] * frame[0][c] + d[1] * frame[1][c] + d[2] * frame[2][c]);
    const RefineResult rr = refine_to_locus(eq, normalized(q), params);
    if (rr.status != RefineStatus::converged) continue;
    const double dist = distance(rr.point, p);
    if (dist >= 0.2 * h && dist <= 5.0 * h) return rr.point;
  }
  return std::nullopt;
}

}  // namespace detail

LocusKind local_rank(const LocusEquation& eq, const SpherePoint& p, const LocusParams& params) {
  switch (classify_rank(constraint_singular_values(eq, p), params.rank_tol)) {
    case PointRank::curve: return LocusKind::curve;
    case PointRank::surface:
      return detail::surface_confirmed(eq, p, params) ? LocusKind::surface : LocusKind::curve;
    case PointRank::singular: break;
  }
  const auto ext = detail::probe_extension(eq, p, params);
  if (!ext) return LocusKind::point;
  return classify_rank(constraint_singular_values(eq, *ext), params.rank_tol) == PointRank::surface &&
                 detail::surface_confirmed(eq, *ext, params)
             ? LocusKind::surface
             : LocusKind::curve;
}

LocusKind local_rank(const RatExpr& b, const SpherePoint& p, const LocusParams& params) {
  return local_rank(LocusEquation(b), p, params);
}

LocusComponent trace_component(const RatExpr& b, const SpherePoint& seed, const LocusParams& params) {
  const LocusEquation eq(b);
  LocusComponent c;
  c.kind = LocusKind::curve;
  const auto traced = detail::trace_curve(eq, seed, params);
  if (traced.points.size() < 2) throw StepCollapse("no step possible from the seed point");
  c.points = traced.points;
  c.closed = traced.closed;
  c.partial = traced.partial;
  for (const auto& p : c.points) {
    GammaResult g = gamma_from_B(b, p, params.tolerances);
    c.classes.push_back(classify(g, params.tolerances.class_band));
    c.gammas.push_back(g);
  }
  canonicalize(c);
  if (c.closed) {
    // keep gammas aligned with the rotated points
    c.gammas.clear();
    c.classes.clear();
    for (const auto& p : c.points) {
      GammaResult g = gamma_from_B(b, p, params.tolerances);
      c.classes.push_back(classify(g, params.tolerances.class_band));
      c.gammas.push_back(g);
    }
  }
  return c;
}

std::vector<SpherePoint> detect_degenerate(const RatExpr& f, const std::vector<LocusComponent>& components,
                                           const LocusParams& params) {
  const RatExpr b = b_function(f);
  const GammaParts parts = gamma_parts(f);
  const LocusEquation eq(b);
  const double tau_den = params.tolerances.tau_den;
  std::vector<SpherePoint> out;

  auto degenerate_at = [&](const SpherePoint& p) {
    try {
      return gamma_at(parts, b, p, params.tolerances).degenerate;
    } catch (const Error&) {
      return false;
    }
  };
  auto norm_at = [&](const SpherePoint& p) {
    try {
      return relative_gamma_norm(parts, p, tau_den);
    } catch (const PoleProximity&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  for (const auto& c : components) {
    for (const auto& p : c.points) {
      if (degenerate_at(p)) add_unique(out, p, params.cluster_radius);
    }
    if (c.kind != LocusKind::curve || c.points.size() < 3) continue;

    const std::size_t n = c.points.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = norm_at(c.points[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.closed && (i == 0 || i + 1 == n)) continue;
      const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
      if (!(d[i] < kScanThreshold) || d[i] > d[prev] || d[i] > d[next] || (d[i] == d[prev] && d[i] == d[next])) continue;

      // Golden-section search along the polyline prev -> i -> next, each
      // candidate pulled back onto the locus.
      auto at = [&](double s) {
        const SpherePoint q = s < 0.0 ? lerp_on_sphere(c.points[i], c.points[prev], -s)
                                      : lerp_on_sphere(c.points[i], c.points[next], s);
        const RefineResult r = refine_to_locus(eq, q, params);
        const SpherePoint x = r.status == RefineStatus::failed ? q : r.point;
        return std::pair{x, norm_at(x)};
      };
      const double g = (std::sqrt(5.0) - 1.0) / 2.0;
      double lo = -1.0, hi = 1.0;
      double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
      auto f1 = at(x1), f2 = at(x2);
      auto best = std::pair{c.points[i], d[i]};
      for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
        if (f1.second < f2.second) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - g * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + g * (hi - lo);
          f2 = at(x2);
        }
        for (const auto& cand : {f1, f2}) {
          if (cand.second < best.second) best = cand;
        }
        if (best.second == 0.0) break;
      }
      if (best.second <= params.tolerances.tau_zero && degenerate_at(best.first)) {
        add_unique(out, best.first, params.cluster_radius);
      }
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

LocusResult find_components(const RatExpr& f, const LocusParams& params) {
  const RatExpr b = b_function(f);
  const LocusEquation eq(b);
  if (eq.polynomial().is_zero()) throw InvalidArgument("B vanishes identically; every point is a complex tangent");
  LocusResult result;
  if (eq.polynomial().is_constant()) return result;

  const auto samples = sample_sphere(params.sample_count, params.rng_seed);
  std::vector<RefineResult> refined(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { refined[i] = refine_to_locus(eq, samples[i], params); });

  std::vector<SpherePoint> pts;
  for (const auto& r : refined) {
    if (r.status == RefineStatus::converged) pts.push_back(r.point);
    if (r.status == RefineStatus::pole) add_unique(result.indeterminate_points, r.point, params.cluster_radius);
  }

  const double radius = params.cluster_radius;
  std::vector<R4> coords;
  coords.reserve(pts.size());
  for (const auto& p : pts) coords.push_back(to_r4(p));

  detail::PointGrid grid(radius);
  for (std::size_t i = 0; i < coords.size(); ++i) grid.insert(coords[i], i);
  UnionFind uf(pts.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    grid.visit_near(coords[i], [&](std::size_t j) {
      if (j > i && distance(coords[i], coords[j]) <= radius) uf.unite(i, j);
    });
  }
  std::vector<std::vector<std::size_t>> clusters(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) clusters[uf.find(i)].push_back(i);

  std::vector<bool> absorbed(pts.size(), false);
  auto absorb_near = [&](const std::vector<SpherePoint>& vertices, double r) {
    detail::PointGrid vgrid(r);
    std::vector<R4> vc;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      vc.push_back(to_r4(vertices[k]));
      vgrid.insert(vc.back(), k);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!absorbed[i] && vgrid.any_within(coords[i], r, vc)) absorbed[i] = true;
    }
  };

  std::vector<LocusComponent> comps;
  for (const auto& members : clusters) {
    for (std::size_t guard = 0; guard < members.size(); ++guard) {
      std::vector<std::size_t> active;
      for (std::size_t i : members) {
        if (!absorbed[i]) active.push_back(i);
      }
      if (active.empty()) break;

      // Most common regular rank among a few active points decides.
      int curve_votes = 0, surface_votes = 0;
      std::optional<std::size_t> curve_seed, surface_seed;
      for (std::size_t k = 0; k < std::min<std::size_t>(active.size(), 5); ++k) {
        const auto r = classify_rank(constraint_singular_values(eq, pts[active[k]]), params.rank_tol);
        if (r == PointRank::curve) {
          ++curve_votes;
          if (!curve_seed) curve_seed = active[k];
        } else if (r == PointRank::surface) {
          ++surface_votes;
          if (!surface_seed) surface_seed = active[k];
        }
      }

      const SpherePoint first = pts[active.front()];
      LocusComponent c;
      if (curve_votes == 0 && surface_votes == 0) {
        const auto ext = detail::probe_extension(eq, first, params);
        if (!ext) {
          c.kind = LocusKind::point;
          c.points = {polish_point(eq, first, params)};
          absorbed[active.front()] = true;
          absorb_near(c.points, radius);
          comps.push_back(std::move(c));
          continue;
        }
        const auto r = classify_rank(constraint_singular_values(eq, *ext), params.rank_tol);
        if (r == PointRank::surface && detail::surface_confirmed(eq, *ext, params)) {
          c.kind = LocusKind::surface;
        } else {
          c.kind = LocusKind::curve;
        }
        c.points = {*ext};
      } else if (surface_votes > curve_votes && detail::surface_confirmed(eq, pts[*surface_seed], params)) {
        c.kind = LocusKind::surface;
        c.points = {pts[*surface_seed]};
      } else {
        c.kind = LocusKind::curve;
        c.points = {pts[curve_seed ? *curve_seed : *surface_seed]};
      }
      absorbed[active.front()] = true;

      if (c.kind == LocusKind::curve) {
        const auto traced = detail::trace_curve(eq, c.points.front(), params);
        if (traced.points.size() < 2) continue;
        c.points = traced.points;
        c.closed = traced.closed;
        c.partial = traced.partial;
        absorb_near(c.points, radius + params.trace_step);
      } else {
        c.points = detail::grow_surface(eq, c.points.front(), params);
        c.partial = c.points.size() >= params.surface_cap;
        absorb_near(c.points, 5.0 * params.trace_step);
      }
      comps.push_back(std::move(c));
    }
  }

  const GammaParts parts = gamma_parts(f);
  for (auto& c : comps) {
    canonicalize(c);
    fill_gammas(c, parts, b, params, result.indeterminate_points);
  }
  comps.erase(std::remove_if(comps.begin(), comps.end(), [](const LocusComponent& c) { return c.points.empty(); }),
              comps.end());
  for (auto& c : comps) c.degenerate_points = detect_degenerate(f, {c}, params);

  std::vector<SpherePoint> mins;
  for (const auto& c : comps) mins.push_back(*std::min_element(c.points.begin(), c.points.end(), lex_less));
  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
    if (comps[a].kind != comps[b2].kind) return comps[a].kind < comps[b2].kind;
    return lex_less(mins[a], mins[b2]);
  });
  for (std::size_t k = 0; k < order.size(); ++k) {
    result.components.push_back(std::move(comps[order[k]]));
    result.components.back().id = static_cast<int>(k);
  }
  std::sort(result.indeterminate_points.begin(), result.indeterminate_points.end(), lex_less);
  return result;
}

}  // namespace bishop

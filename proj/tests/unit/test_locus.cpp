#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "bishop/croper.hpp"
#include "bishop/errors.hpp"
#include "bishop/examples.hpp"
#include "bishop/locus.hpp"
#include "oracles.hpp"

using namespace bishop;

namespace {

const double kRootHalf = std::sqrt(0.5);

const LocusResult& analysis(const ExampleSpec& spec) {
  static std::map<std::tuple<int, double, int, int, double>, LocusResult> cache;
  const auto key = std::make_tuple(static_cast<int>(spec.id), spec.alpha, spec.p, spec.q, spec.eps);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, find_components(build_example(spec))).first;
  return it->second;
}

ExampleSpec with_eps(ExampleId id, double eps) {
  ExampleSpec s{id};
  s.eps = eps;
  return s;
}

int count(const LocusResult& r, LocusKind k) {
  int n = 0;
  for (const auto& c : r.components) n += c.kind == k;
  return n;
}

double arc_length(const LocusComponent& c) {
  double s = 0.0;
  for (std::size_t i = 1; i < c.points.size(); ++i) s += distance(c.points[i - 1], c.points[i]);
  if (c.closed) s += distance(c.points.back(), c.points.front());
  return s;
}

}  // namespace

TEST_CASE("sample_sphere") {
  const auto one = sample_sphere(1, 42);
  REQUIRE(one.size() == 1);
  CHECK(sphere_residual(one[0]) <= 1e-14);
  const auto a = sample_sphere(5000, 7), b = sample_sphere(5000, 7);
  CHECK(a == b);
  for (const auto& p : a) CHECK(sphere_residual(p) <= 1e-14);
  CHECK(sample_sphere(100, 8) != sample_sphere(100, 7));
}

TEST_CASE("refine_to_locus examples") {
  const LocusParams params;
  const RatExpr b1 = b_function(build_example({ExampleId::ex1}));
  const auto r = refine_to_locus(b1, normalized({0.1, 0.0, 0.0, 0.99}), params);
  REQUIRE(r.status == RefineStatus::converged);
  // The zero along the circle is cubic in one transverse direction, so the
  // double-precision floor sits well above 1e-9.
  CHECK(std::abs(r.point.z) <= 1e-6);
  CHECK(std::abs(LocusEquation(b1).value(r.point)) <= params.newton_tol);
  CHECK(sphere_residual(r.point) <= kTauSphere);

  const RatExpr one = RatExpr::constant(1.0);
  for (const auto& p : sample_sphere(50, 3)) CHECK(refine_to_locus(one, p, params).status == RefineStatus::failed);

  const RatExpr bt = b_function(build_example({ExampleId::torus_surface}));
  const SpherePoint t{kRootHalf, kRootHalf};
  const auto rt = refine_to_locus(bt, t, params);
  REQUIRE(rt.status == RefineStatus::converged);
  CHECK(distance(rt.point, t) <= 1e-12);
}

TEST_CASE("local_rank examples") {
  const LocusParams params;
  CHECK(local_rank(b_function(build_example({ExampleId::torus_surface})), {kRootHalf, kRootHalf}, params) ==
        LocusKind::surface);
  CHECK(local_rank(b_function(build_example({ExampleId::ex1})), {0.0, Complex(0.0, 1.0)}, params) ==
        LocusKind::curve);
  CHECK(local_rank(b_function(build_example({ExampleId::ex6})), {0.0, 1.0}, params) == LocusKind::point);
}

TEST_CASE("trace_component examples") {
  const LocusParams params;
  const LocusComponent c1 = trace_component(b_function(build_example({ExampleId::ex1})), {0.0, 1.0}, params);
  CHECK(c1.kind == LocusKind::curve);
  CHECK(c1.closed);
  CHECK(arc_length(c1) == doctest::Approx(2 * std::numbers::pi).epsilon(0.01));
  for (std::size_t i = 1; i < c1.points.size(); ++i) {
    const double d = distance(c1.points[i - 1], c1.points[i]);
    CHECK(d >= 0.2 * params.trace_step);
    CHECK(d <= 2.0 * params.trace_step);
  }

  const LocusResult& r4 = analysis({ExampleId::ex4});
  REQUIRE(r4.components.size() == 1);
  const auto& c4 = r4.components[0];
  CHECK(c4.closed);
  double lo = 1.0, hi = 0.0;
  for (const auto& p : c4.points) {
    lo = std::min(lo, std::abs(p.z));
    hi = std::max(hi, std::abs(p.z));
  }
  CHECK(hi - lo < 1e-6);

  const LocusResult& r8 = analysis(with_eps(ExampleId::ex8, 0.1));
  REQUIRE(count(r8, LocusKind::curve) == 2);
  const double c = 1.1;
  const double w_plus = (1 + std::sqrt(8 * c * c + 1)) / (4 * c), w_minus = (1 - std::sqrt(8 * c * c + 1)) / (4 * c);
  std::vector<double> mean_re;
  for (const auto& comp : r8.components) {
    CHECK(comp.closed);
    double s = 0.0;
    for (const auto& p : comp.points) {
      s += p.w.real();
      CHECK(std::abs(p.w.imag()) < 1e-6);
    }
    mean_re.push_back(s / comp.points.size());
  }
  std::sort(mean_re.begin(), mean_re.end());
  CHECK(mean_re[0] == doctest::Approx(w_minus).epsilon(1e-6));
  CHECK(mean_re[1] == doctest::Approx(w_plus).epsilon(1e-6));
  CHECK(mean_re[0] == doctest::Approx(-0.5155).epsilon(1e-3));
  CHECK(mean_re[1] == doctest::Approx(0.9700).epsilon(1e-3));
}

TEST_CASE("find_components examples") {
  const LocusResult& r2 = analysis({ExampleId::ex2});
  REQUIRE(r2.components.size() == 2);
  int axis = 0, small = 0;
  for (const auto& c : r2.components) {
    CHECK(c.kind == LocusKind::curve);
    double zmax = 0.0, wdev = 0.0;
    for (const auto& p : c.points) {
      zmax = std::max(zmax, std::abs(p.z));
      wdev = std::max(wdev, std::abs(std::abs(p.w) - 0.25));
    }
    axis += zmax < 1e-8;
    small += wdev < 1e-6;
  }
  CHECK(axis == 1);
  CHECK(small == 1);

  CHECK(count(analysis({ExampleId::ex3}), LocusKind::curve) == 5);
  CHECK(analysis({ExampleId::ex3}).components.size() == 5);

  const LocusResult& r5 = analysis({ExampleId::ex5});
  REQUIRE(r5.components.size() == 2);
  const auto roots = oracle::cubic_roots(4, 0, -4, 1);
  std::vector<double> z2;
  for (const auto& c : r5.components) z2.push_back(std::norm(c.points.front().z));
  std::sort(z2.begin(), z2.end());
  CHECK(z2[0] == doctest::Approx(roots[1]).epsilon(1e-6));
  CHECK(z2[1] == doctest::Approx(roots[2]).epsilon(1e-6));

  ExampleSpec low{ExampleId::ex2};
  low.alpha = 0.25;
  const LocusResult& rl = analysis(low);
  REQUIRE(rl.components.size() == 1);
  for (const auto& p : rl.components[0].points) CHECK(std::abs(p.z) < 1e-8);

  CHECK_THROWS_AS(find_components(RatExpr::constant(0.0)), InvalidArgument);
  CHECK_THROWS_AS(find_components(parse_expr("z*w + 3")), InvalidArgument);
}

TEST_CASE("detect_degenerate examples") {
  const LocusResult& r6 = analysis({ExampleId::ex6});
  const auto d6 = detect_degenerate(build_example({ExampleId::ex6}), r6.components);
  REQUIRE_FALSE(d6.empty());
  for (const auto& p : d6) CHECK(distance(p, {0.0, 1.0}) < 1e-4);

  const ExampleSpec ex7 = with_eps(ExampleId::ex7, 0.0);
  const auto d7 = detect_degenerate(build_example(ex7), analysis(ex7).components);
  bool near = false;
  for (const auto& p : d7) near = near || distance(p, {0.0, 1.0}) < 1e-4;
  CHECK(near);

  const ExampleSpec ex6b = with_eps(ExampleId::ex6b, 0.05);
  CHECK(detect_degenerate(build_example(ex6b), analysis(ex6b).components).empty());
}

TEST_CASE("invariants on built-in examples") {
  struct Known {
    ExampleSpec spec;
    int points, curves, surfaces;
  };
  ExampleSpec ex2c{ExampleId::ex2c};
  const std::vector<Known> known = {
      {{ExampleId::ex1}, 0, 1, 0},
      {{ExampleId::ex2}, 0, 2, 0},
      {ex2c, 0, 2, 0},
      {{ExampleId::ex3}, 0, 5, 0},
      {{ExampleId::ex4}, 0, 1, 0},
      {{ExampleId::ex5}, 0, 2, 0},
      {{ExampleId::torus_surface}, 0, 0, 1},
      {{ExampleId::ex6}, 1, 0, 0},
      {with_eps(ExampleId::ex6b, 0.05), 0, 1, 0},
      {with_eps(ExampleId::ex7, 0.1), 0, 1, 0},
      {with_eps(ExampleId::ex8, 0.1), 0, 2, 0},
  };
  const LocusParams params;
  for (const auto& k : known) {
    CAPTURE(to_string(k.spec.id));
    const RatExpr f = build_example(k.spec);
    const LocusResult& r = analysis(k.spec);
    CHECK(count(r, LocusKind::point) == k.points);
    CHECK(count(r, LocusKind::curve) == k.curves);
    CHECK(count(r, LocusKind::surface) == k.surfaces);

    const LocusEquation eq(b_function(f));
    int surface_points = 0, surface_votes = 0;
    for (std::size_t ci = 0; ci < r.components.size(); ++ci) {
      const auto& c = r.components[ci];
      CHECK(c.id == static_cast<int>(ci));
      CHECK(c.gammas.size() == c.points.size());
      CHECK(c.classes.size() == c.points.size());
      if (c.kind == LocusKind::curve && c.closed) CHECK(distance(c.points.front(), c.points.back()) <= params.closure_tol);
      const std::size_t stride = std::max<std::size_t>(1, c.points.size() / 40);
      for (std::size_t i = 0; i < c.points.size(); i += stride) {
        const auto& p = c.points[i];
        CHECK(eq.vanishes(p, params.tolerances.tau_zero));
        CHECK(sphere_residual(p) <= kTauSphere);
        const auto again = refine_to_locus(eq, p, params);
        CHECK(again.status == RefineStatus::converged);
        CHECK(distance(again.point, p) <= params.newton_tol);
        if (c.kind == LocusKind::curve && i > 0 && i + 1 < c.points.size()) {
          CHECK(local_rank(eq, p, params) == LocusKind::curve);
        }
        if (c.kind == LocusKind::surface) {
          ++surface_points;
          surface_votes += local_rank(eq, p, params) == LocusKind::surface;
        }
      }
    }
    if (surface_points > 0) CHECK(surface_votes >= 0.95 * surface_points);
  }
}

TEST_CASE("pipeline determinism") {
  const RatExpr f = build_example({ExampleId::ex5});
  LocusParams params;
  params.sample_count = 5000;
  CHECK(find_components(f, params) == find_components(f, params));
}

TEST_CASE("LocusEquation keeps tracked numerator bases sharp") {
  const LocusEquation eq(b_function(build_example({ExampleId::ex6})));
  CHECK(eq.vanishes({0.0, 1.0}, 1e-14));
  CHECK_FALSE(eq.is_pole({0.0, Complex(0.0, 1.0)}, kTauDen));
}

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oracle {

namespace {

using bishop::Exponents;
using bishop::PolyExpr;
using bishop::RatExpr;
using bishop::Var;

}  // namespace

std::array<Complex, 4> wirtinger_fd(const ScalarFn& g, Complex z, Complex w, double h) {
  const Complex i(0.0, 1.0);
  const Complex dx1 = (g(z + h, w) - g(z - h, w)) / (2.0 * h);
  const Complex dy1 = (g(z + i * h, w) - g(z - i * h, w)) / (2.0 * h);
  const Complex dx2 = (g(z, w + h) - g(z, w - h)) / (2.0 * h);
  const Complex dy2 = (g(z, w + i * h) - g(z, w - i * h)) / (2.0 * h);
  return {0.5 * (dx1 - i * dy1), 0.5 * (dx2 - i * dy2), 0.5 * (dx1 + i * dy1), 0.5 * (dx2 + i * dy2)};
}

Complex b_fd(const ScalarFn& f, Complex z, Complex w, double h) {
  const auto d = wirtinger_fd(f, z, w, h);
  return -std::conj(z * d[3] - w * d[2]);
}

FdGamma gamma_fd(const ScalarFn& b, Complex z, Complex w, double h) {
  const auto d = wirtinger_fd(b, z, w, h);
  const Complex xb = std::conj(z) * d[1] - std::conj(w) * d[0];
  const Complex xbar_b = z * d[3] - w * d[2];
  FdGamma g;
  g.numerator = std::abs(xb);
  g.denominator = std::abs(xbar_b);
  g.gamma = 0.5 * g.numerator / g.denominator;
  return g;
}

std::array<double, 3> cubic_roots(double a, double b, double c, double d) {
  // x = t - b/(3a): t^3 + p t + q = 0.
  const double bn = b / a, cn = c / a, dn = d / a;
  const double p = cn - bn * bn / 3.0;
  const double q = 2.0 * bn * bn * bn / 27.0 - bn * cn / 3.0 + dn;
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double theta = std::acos(3.0 * q / (p * m)) / 3.0;
  std::array<double, 3> r;
  for (int k = 0; k < 3; ++k) r[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - bn / 3.0;
  std::sort(r.begin(), r.end());
  return r;
}

double gauss_linking(const Curve3& a, const Curve3& b, int n) {
  const double dt = 2.0 * std::numbers::pi / n;
  const double hd = 1e-5;
  std::vector<std::array<double, 3>> pa(n), ta(n), pb(n), tb(n);
  auto tangent = [&](const Curve3& c, double t) {
    const auto p = c(t + hd), m = c(t - hd);
    return std::array<double, 3>{(p[0] - m[0]) / (2 * hd), (p[1] - m[1]) / (2 * hd), (p[2] - m[2]) / (2 * hd)};
  };
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * dt;
    pa[k] = a(t);
    ta[k] = tangent(a, t);
    pb[k] = b(t);
    tb[k] = tangent(b, t);
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r[3] = {pa[i][0] - pb[j][0], pa[i][1] - pb[j][1], pa[i][2] - pb[j][2]};
      const double cx = ta[i][1] * tb[j][2] - ta[i][2] * tb[j][1];
      const double cy = ta[i][2] * tb[j][0] - ta[i][0] * tb[j][2];
      const double cz = ta[i][0] * tb[j][1] - ta[i][1] * tb[j][0];
      const double d = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
      sum += (r[0] * cx + r[1] * cy + r[2] * cz) / (d * d * d);
    }
  }
  return sum * dt * dt / (4.0 * std::numbers::pi);
}

std::array<double, 3> project_from(const std::array<double, 4>& pole, Complex z, Complex w) {
  std::array<std::array<double, 4>, 4> basis;
  basis[0] = pole;
  int filled = 1;
  for (int axis = 0; axis < 4 && filled < 4; ++axis) {
    std::array<double, 4> v{};
    v[axis] = 1.0;
    for (int k = 0; k < filled; ++k) {
      double d = 0.0;
      for (int c = 0; c < 4; ++c) d += v[c] * basis[k][c];
      for (int c = 0; c < 4; ++c) v[c] -= d * basis[k][c];
    }
    double n = 0.0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    if (n < 1e-6) continue;
    for (double& c : v) c /= n;
    basis[filled++] = v;
  }
  const double x[4] = {z.real(), z.imag(), w.real(), w.imag()};
  double coord[4];
  for (int k = 0; k < 4; ++k) {
    coord[k] = 0.0;
    for (int c = 0; c < 4; ++c) coord[k] += x[c] * basis[k][c];
  }
  const double d = 1.0 - coord[0];
  return {coord[1] / d, coord[2] / d, coord[3] / d};
}

PolyExpr random_poly(Rng& rng, int terms, int degree) {
  std::vector<bishop::Monomial> ms;
  const int n = rng.integer(1, terms);
  for (int k = 0; k < n; ++k) {
    Exponents e;
    int budget = rng.integer(0, degree);
    for (int v = 0; v < 4 && budget > 0; ++v) {
      const int take = rng.integer(0, budget);
      e.e[v] = static_cast<std::uint16_t>(take);
      budget -= take;
    }
    ms.push_back({rng.complex(2.0), e});
  }
  return PolyExpr::from_terms(std::move(ms));
}

PolyExpr random_generic_poly(Rng& rng, int terms, int degree) {
  std::vector<Exponents> all;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      for (int c = 0; a + b + c <= degree; ++c) {
        for (int d = 0; a + b + c + d <= degree; ++d) {
          Exponents e;
          e.e = {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), static_cast<std::uint16_t>(c),
                 static_cast<std::uint16_t>(d)};
          all.push_back(e);
        }
      }
    }
  }
  std::vector<bishop::Monomial> ms;
  for (int k = 0; k < terms; ++k) {
    ms.push_back({rng.complex(2.0), all[rng.integer(0, static_cast<int>(all.size()) - 1)]});
  }
  return PolyExpr::from_terms(std::move(ms));
}

PolyExpr random_holomorphic(Rng& rng, int terms, int degree) {
  std::vector<bishop::Monomial> ms;
  const int n = rng.integer(1, terms);
  for (int k = 0; k < n; ++k) {
    Exponents e;
    e[Var::z] = static_cast<std::uint16_t>(rng.integer(0, degree));
    e[Var::w] = static_cast<std::uint16_t>(rng.integer(0, degree - e[Var::z]));
    ms.push_back({rng.complex(2.0), e});
  }
  return PolyExpr::from_terms(std::move(ms));
}

RatExpr random_expr(Rng& rng) {
  RatExpr e = random_poly(rng, 3, 2);
  const int steps = rng.integer(0, 3);
  for (int s = 0; s < steps; ++s) {
    const RatExpr other = random_poly(rng, 3, 2);
    switch (rng.integer(0, 4)) {
      case 0: e = e + other; break;
      case 1: e = e - other; break;
      case 2: e = e * other; break;
      case 3:
        if (!other.is_zero()) e = e / (other + RatExpr::constant(3.0));
        break;
      case 4: e = e * bishop::pow(RatExpr(random_poly(rng, 2, 1)) + RatExpr::constant(2.5), rng.integer(1, 3)); break;
    }
  }
  return e;
}

bishop::SpherePoint random_sphere_point(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<double, 4> x;
  double s = 0.0;
  for (auto& v : x) {
    v = n(rng.gen);
    s += v * v;
  }
  s = std::sqrt(s);
  return {{x[0] / s, x[1] / s}, {x[2] / s, x[3] / s}};
}

}  // namespace oracle

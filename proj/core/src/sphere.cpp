#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bishop/errors.hpp"
#include "bishop/sphere.hpp"

namespace bishop {

SpherePoint make_sphere_point(Complex z, Complex w, double tol) {
  SpherePoint p{z, w};
  if (!(sphere_residual(p) <= tol)) throw InvalidArgument("point is not on the unit 3-sphere");
  return p;
}

double sphere_residual(const SpherePoint& p) { return std::abs(std::norm(p.z) + std::norm(p.w) - 1.0); }

R4 to_r4(const SpherePoint& p) { return {p.z.real(), p.z.imag(), p.w.real(), p.w.imag()}; }

SpherePoint from_r4(const R4& x) { return {{x[0], x[1]}, {x[2], x[3]}}; }

SpherePoint normalized(const R4& x) {
  const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (!(n > 0.0)) throw InvalidArgument("cannot normalize the zero vector");
  return from_r4({x[0] / n, x[1] / n, x[2] / n, x[3] / n});
}

double distance(const R4& a, const R4& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double distance(const SpherePoint& a, const SpherePoint& b) { return std::sqrt(std::norm(a.z - b.z) + std::norm(a.w - b.w)); }

std::array<R4, 3> tangent_frame(const SpherePoint& p) {
  const Complex i(0.0, 1.0);
  const SpherePoint a{i * p.z, i * p.w};
  const SpherePoint b{-std::conj(p.w), std::conj(p.z)};
  const SpherePoint c{-i * std::conj(p.w), i * std::conj(p.z)};
  return {to_r4(a), to_r4(b), to_r4(c)};
}

bool lex_less(const SpherePoint& a, const SpherePoint& b) { return to_r4(a) < to_r4(b); }

std::vector<SpherePoint> sample_sphere(std::size_t n, std::uint64_t seed) {
  // Additive recurrence on the plastic-like constant of dimension 3.
  const double phi = 1.2207440846057596;
  const std::array<double, 3> alpha{1.0 / phi, 1.0 / (phi * phi), 1.0 / (phi * phi * phi)};
  std::mt19937_64 rng(seed);
  std::array<double, 3> offset{};
  for (auto& o : offset) o = static_cast<double>(rng() >> 11) * 0x1.0p-53;

  std::vector<SpherePoint> out;
  out.reserve(n);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < n; ++k) {
    std::array<double, 3> u{};
    for (int d = 0; d < 3; ++d) {
      const double v = offset[d] + static_cast<double>(k + 1) * alpha[d];
      u[d] = v - std::floor(v);
    }
    const double eta = std::asin(std::sqrt(u[0]));
    out.push_back({std::polar(std::cos(eta), two_pi * u[1]), std::polar(std::sin(eta), two_pi * u[2])});
  }
  return out;
}

}  // namespace bishop

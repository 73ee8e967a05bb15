#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace bishop {

using Complex = std::complex<double>;
using R4 = std::array<double, 4>;

/// Sphere-constraint tolerance for SpherePoint construction.
inline constexpr double kTauSphere = 1e-10;

/// A point (z, w) of the unit 3-sphere |z|^2 + |w|^2 = 1.
struct SpherePoint {
  Complex z;
  Complex w;

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// Throws InvalidArgument when | |z|^2 + |w|^2 - 1 | > tol.
SpherePoint make_sphere_point(Complex z, Complex w, double tol = kTauSphere);

double sphere_residual(const SpherePoint& p);

/// Real coordinates (Re z, Im z, Re w, Im w).
R4 to_r4(const SpherePoint& p);
SpherePoint from_r4(const R4& x);
/// Radial projection of a non-zero vector onto the sphere.
SpherePoint normalized(const R4& x);
double distance(const SpherePoint& a, const SpherePoint& b);
double distance(const R4& a, const R4& b);

/// Orthonormal frame of the tangent space at p: (iz, iw), (-conj w, conj z),
/// (-i conj w, i conj z) in real coordinates.
std::array<R4, 3> tangent_frame(const SpherePoint& p);

/// Lexicographic order on (Re z, Im z, Re w, Im w).
bool lex_less(const SpherePoint& a, const SpherePoint& b);

/// Deterministic low-discrepancy cover of the sphere in Hopf coordinates
/// z = cos(eta) e^{i t1}, w = sin(eta) e^{i t2}, area-uniform in eta.
std::vector<SpherePoint> sample_sphere(std::size_t n, std::uint64_t seed);

}  // namespace bishop

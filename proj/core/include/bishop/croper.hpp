#pragma once

// The tangential Cauchy-Riemann operator of the 3-sphere,
//
//     L = z d/dwb - w d/dzb,    Lbar = zb d/dw - wb d/dz,
//
// the complex-tangent indicator B = -conj(L f) of graph(f) over S^3, and the
// Bishop invariant gamma = |L L f| / (2 |Lbar L f|) at a complex tangent.
//
// Derivatives are always taken on the ambient expression and restricted to
// the sphere afterwards. L and Lbar annihilate |z|^2 + |w|^2 - 1, so any
// representative modulo the sphere equation gives the same restriction.

#include <optional>
#include <string_view>

#include "bishop/expr.hpp"
#include "bishop/sphere.hpp"

namespace bishop {

struct Tolerances {
  double tau_zero = 1e-8;    // relative zero test for B and the gamma norms
  double tau_den = kTauDen;  // relative pole test
  double tau_sphere = kTauSphere;
  double class_band = 1e-6;  // half-width of the parabolic band around 1/2

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// Norms of the two Bishop parts at a tangent. gamma is empty when the
/// tangent is degenerate and +infinity when only the denominator vanishes.
struct GammaResult {
  double numerator_norm = 0.0;    // |L L f|
  double denominator_norm = 0.0;  // |Lbar L f|
  std::optional<double> gamma;
  bool degenerate = false;

  friend bool operator==(const GammaResult&, const GammaResult&) = default;
};

enum class TangentClass { elliptic, parabolic, hyperbolic, hyperbolic_infinity, degenerate };

std::string_view to_string(TangentClass c);
/// Inverse of to_string; throws InvalidArgument on unknown names.
TangentClass tangent_class_from_string(std::string_view s);

RatExpr apply_L(const RatExpr& f);
RatExpr apply_Lbar(const RatExpr& f);

/// B = -conj(L f); its zeros on the sphere are the complex tangents.
RatExpr b_function(const RatExpr& f);

/// Determinant of the Jacobian of (zeta - f, conj(zeta - f), rho) with
/// respect to (z, w, zeta), rows (-f_z, -(fbar)_z, zb), (-f_w, -(fbar)_w, wb),
/// (1, 0, 0). Expands to zb (fbar)_w - wb (fbar)_z = conj(L f) = -B.
Complex b_determinant(const RatExpr& f, const SpherePoint& p, double tau_den = kTauDen);

struct GammaParts {
  RatExpr second;  // L(L f)
  RatExpr mixed;   // Lbar(L f)
};

GammaParts gamma_parts(const RatExpr& f);

/// Throws NotATangent when |B(p)| exceeds tau_zero times its scale and
/// PoleProximity when p sits on an untracked pole.
GammaResult gamma_at(const RatExpr& f, const SpherePoint& p, const Tolerances& tol = {});
/// Same, with the symbolic parts precomputed.
GammaResult gamma_at(const GammaParts& parts, const RatExpr& b, const SpherePoint& p, const Tolerances& tol = {});

/// gamma = |Lbar B| / (2 |L B|) directly from an indicator B.
GammaResult gamma_from_B(const RatExpr& b, const SpherePoint& p, const Tolerances& tol = {});

/// Builds a GammaResult from the two moduli.
GammaResult make_gamma(const Modulus& numerator, const Modulus& denominator, double tau_zero);

TangentClass classify(const GammaResult& g, double band = Tolerances{}.class_band);

}  // namespace bishop

#include <cmath>
#include <limits>

#include "bishop/croper.hpp"
#include "bishop/errors.hpp"

namespace bishop {

namespace {

const RatExpr& var(Var v) {
  static const RatExpr vars[4] = {RatExpr::variable(Var::z), RatExpr::variable(Var::w), RatExpr::variable(Var::zb),
                                  RatExpr::variable(Var::wb)};
  return vars[static_cast<int>(v)];
}

bool vanishes(const Modulus& m, double tau) { return m.value <= tau * m.scale; }

void require_tangent(const RatExpr& b, const SpherePoint& p, const Tolerances& tol) {
  const Modulus m = modulus_at(b, p.z, p.w, tol.tau_den);
  if (!vanishes(m, tol.tau_zero)) throw NotATangent("B does not vanish at the point");
}

}  // namespace

std::string_view to_string(TangentClass c) {
  switch (c) {
    case TangentClass::elliptic: return "elliptic";
    case TangentClass::parabolic: return "parabolic";
    case TangentClass::hyperbolic: return "hyperbolic";
    case TangentClass::hyperbolic_infinity: return "hyperbolic_infinity";
    case TangentClass::degenerate: return "degenerate";
  }
  return "degenerate";
}

TangentClass tangent_class_from_string(std::string_view s) {
  for (auto c : {TangentClass::elliptic, TangentClass::parabolic, TangentClass::hyperbolic,
                 TangentClass::hyperbolic_infinity, TangentClass::degenerate}) {
    if (to_string(c) == s) return c;
  }
  throw InvalidArgument("unknown tangent class '" + std::string(s) + "'");
}

RatExpr apply_L(const RatExpr& f) {
  return var(Var::z) * wirtinger(f, Var::wb) - var(Var::w) * wirtinger(f, Var::zb);
}

RatExpr apply_Lbar(const RatExpr& f) {
  return var(Var::zb) * wirtinger(f, Var::w) - var(Var::wb) * wirtinger(f, Var::z);
}

RatExpr b_function(const RatExpr& f) { return -conjugate(apply_L(f)); }

Complex b_determinant(const RatExpr& f, const SpherePoint& p, double tau_den) {
  const RatExpr fbar = conjugate(f);
  auto at = [&](const RatExpr& e) { return evaluate(e, p.z, p.w, tau_den); };
  const Complex m[3][3] = {
      {-at(wirtinger(f, Var::z)), -at(wirtinger(fbar, Var::z)), std::conj(p.z)},
      {-at(wirtinger(f, Var::w)), -at(wirtinger(fbar, Var::w)), std::conj(p.w)},
      {1.0, 0.0, 0.0},
  };
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

GammaParts gamma_parts(const RatExpr& f) {
  const RatExpr lf = apply_L(f);
  return {apply_L(lf), apply_Lbar(lf)};
}

GammaResult make_gamma(const Modulus& numerator, const Modulus& denominator, double tau_zero) {
  GammaResult g;
  g.numerator_norm = numerator.value;
  g.denominator_norm = denominator.value;
  const bool num_zero = vanishes(numerator, tau_zero);
  const bool den_zero = vanishes(denominator, tau_zero);
  if (num_zero && den_zero) {
    g.degenerate = true;
  } else if (den_zero) {
    g.gamma = std::numeric_limits<double>::infinity();
  } else {
    g.gamma = 0.5 * numerator.value / denominator.value;
  }
  return g;
}

GammaResult gamma_at(const GammaParts& parts, const RatExpr& b, const SpherePoint& p, const Tolerances& tol) {
  require_tangent(b, p, tol);
  return make_gamma(modulus_at(parts.second, p.z, p.w, tol.tau_den), modulus_at(parts.mixed, p.z, p.w, tol.tau_den),
                    tol.tau_zero);
}

GammaResult gamma_at(const RatExpr& f, const SpherePoint& p, const Tolerances& tol) {
  return gamma_at(gamma_parts(f), b_function(f), p, tol);
}

GammaResult gamma_from_B(const RatExpr& b, const SpherePoint& p, const Tolerances& tol) {
  require_tangent(b, p, tol);
  return make_gamma(modulus_at(apply_Lbar(b), p.z, p.w, tol.tau_den), modulus_at(apply_L(b), p.z, p.w, tol.tau_den),
                    tol.tau_zero);
}

TangentClass classify(const GammaResult& g, double band) {
  if (g.degenerate || !g.gamma) return TangentClass::degenerate;
  const double v = *g.gamma;
  if (std::isinf(v)) return TangentClass::hyperbolic_infinity;
  if (std::abs(v - 0.5) <= band) return TangentClass::parabolic;
  return v < 0.5 ? TangentClass::elliptic : TangentClass::hyperbolic;
}

}  // namespace bishop

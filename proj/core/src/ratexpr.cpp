#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "bishop/errors.hpp"
#include "bishop/expr.hpp"

namespace bishop {

namespace {

template <typename T>
T ipow(T x, int n) {
  T r = 1.0;
  T b = n < 0 ? T(1.0) / x : x;
  unsigned k = static_cast<unsigned>(std::abs(n));
  while (k > 0) {
    if (k & 1u) r *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return r;
}

// q = unit * x^content * base, base monic with no monomial content.
struct BaseSplit {
  Complex unit;
  Exponents content;
  PolyExpr base;
};

BaseSplit split_base(const PolyExpr& q) {
  const Exponents c = q.content();
  std::vector<Monomial> reduced;
  reduced.reserve(q.size());
  for (const auto& t : q.terms()) reduced.push_back({t.coeff, t.exps - c});
  PolyExpr r = PolyExpr::from_terms(std::move(reduced));
  const Complex unit = r.leading().coeff;
  return {unit, c, r.scaled(1.0 / unit)};
}

PolyExpr expand_powers(PolyExpr acc, const std::vector<Factor>& fs) {
  for (const auto& f : fs) {
    if (f.power > 0) acc = acc * f.base.pow(static_cast<unsigned>(f.power));
  }
  return acc;
}

// Factors of a and b aligned by base; missing entries have power 0.
struct AlignedFactor {
  PolyExpr base;
  int pa = 0;
  int pb = 0;
};

std::vector<AlignedFactor> align(const std::vector<Factor>& a, const std::vector<Factor>& b) {
  std::vector<AlignedFactor> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && poly_less(a[i].base, b[j].base))) {
      out.push_back({a[i].base, a[i].power, 0});
      ++i;
    } else if (i == a.size() || poly_less(b[j].base, a[i].base)) {
      out.push_back({b[j].base, 0, b[j].power});
      ++j;
    } else {
      out.push_back({a[i].base, a[i].power, b[j].power});
      ++i;
      ++j;
    }
  }
  return out;
}

RatExpr add(const RatExpr& a, const RatExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  PolyExpr inner_a = a.residual();
  PolyExpr inner_b = b.residual();
  std::vector<Factor> common;
  for (const auto& f : align(a.factors(), b.factors())) {
    const int m = std::min(f.pa, f.pb);
    if (m != 0) common.push_back({f.base, m});
    if (f.pa > m) inner_a = inner_a * f.base.pow(static_cast<unsigned>(f.pa - m));
    if (f.pb > m) inner_b = inner_b * f.base.pow(static_cast<unsigned>(f.pb - m));
  }
  return RatExpr(inner_a + inner_b, std::move(common));
}

RatExpr multiply(const RatExpr& a, const RatExpr& b) {
  std::vector<Factor> fs = a.factors();
  fs.insert(fs.end(), b.factors().begin(), b.factors().end());
  return RatExpr(a.residual() * b.residual(), std::move(fs));
}

RatExpr reciprocal(const RatExpr& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero expression");
  std::vector<Factor> fs;
  for (const auto& f : b.factors()) fs.push_back({f.base, -f.power});
  fs.push_back({b.residual(), -1});
  return RatExpr(PolyExpr::constant(1.0), std::move(fs));
}

}  // namespace

RatExpr::RatExpr(PolyExpr p) : residual_(std::move(p)) {}

RatExpr::RatExpr(PolyExpr residual, std::vector<Factor> factors)
    : residual_(std::move(residual)), factors_(std::move(factors)) {
  normalize();
}

RatExpr RatExpr::tracked(const PolyExpr& p, int power) {
  if (p.is_zero()) {
    if (power < 0) throw DivisionByZero("division by the zero expression");
    return power == 0 ? RatExpr(PolyExpr::constant(1.0)) : RatExpr();
  }
  return RatExpr(PolyExpr::constant(1.0), {{p, power}});
}

void RatExpr::normalize() {
  for (const auto& f : factors_) {
    if (f.base.is_zero() && f.power < 0) throw DivisionByZero("division by the zero expression");
  }
  if (residual_.is_zero()) {
    factors_.clear();
    return;
  }

  std::vector<Factor> split;
  for (auto& f : factors_) {
    if (f.power == 0) continue;
    if (f.base.is_zero()) {
      residual_ = PolyExpr{};
      factors_.clear();
      return;
    }
    BaseSplit s = split_base(f.base);
    residual_ = residual_.scaled(ipow(s.unit, f.power));
    for (int v = 0; v < 4; ++v) {
      const int k = s.content.e[v];
      if (k == 0) continue;
      if (f.power > 0) {
        Exponents m;
        m.e[v] = static_cast<std::uint16_t>(k * f.power);
        residual_ = residual_.shifted(m);
      } else {
        split.push_back({PolyExpr::variable(static_cast<Var>(v)), k * f.power});
      }
    }
    if (!s.base.is_constant()) split.push_back({std::move(s.base), f.power});
  }

  std::sort(split.begin(), split.end(), [](const Factor& a, const Factor& b) { return poly_less(a.base, b.base); });
  std::vector<Factor> merged;
  for (auto& f : split) {
    if (!merged.empty() && merged.back().base == f.base) {
      merged.back().power += f.power;
    } else {
      merged.push_back(std::move(f));
    }
  }

  factors_.clear();
  for (auto& f : merged) {
    while (f.power < 0) {
      auto q = residual_.divide_exact(f.base);
      if (!q) break;
      residual_ = std::move(*q);
      ++f.power;
    }
    if (f.power != 0) factors_.push_back(std::move(f));
  }
  if (residual_.is_zero()) factors_.clear();
}

PolyExpr RatExpr::num() const { return expand_powers(residual_, factors_); }

PolyExpr RatExpr::den() const {
  PolyExpr d = PolyExpr::constant(1.0);
  for (const auto& f : factors_) {
    if (f.power < 0) d = d * f.base.pow(static_cast<unsigned>(-f.power));
  }
  return d;
}

bool RatExpr::is_polynomial() const {
  return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.power < 0; });
}

RatExpr arith(const RatExpr& a, const RatExpr& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return add(a, b);
    case ArithOp::sub:
      return add(a, -b);
    case ArithOp::mul:
      return multiply(a, b);
    case ArithOp::div:
      return multiply(a, reciprocal(b));
  }
  return {};
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) { return arith(a, b, ArithOp::add); }
RatExpr operator-(const RatExpr& a, const RatExpr& b) { return arith(a, b, ArithOp::sub); }
RatExpr operator*(const RatExpr& a, const RatExpr& b) { return arith(a, b, ArithOp::mul); }
RatExpr operator/(const RatExpr& a, const RatExpr& b) { return arith(a, b, ArithOp::div); }

RatExpr operator-(const RatExpr& a) { return RatExpr(-a.residual(), a.factors()); }

RatExpr pow(const RatExpr& a, unsigned n) {
  if (n == 0) return RatExpr::constant(1.0);
  if (a.factors().empty() && a.residual().size() > 1) return RatExpr::tracked(a.residual(), static_cast<int>(n));
  std::vector<Factor> fs = a.factors();
  for (auto& f : fs) f.power *= static_cast<int>(n);
  return RatExpr(a.residual().pow(n), std::move(fs));
}

RatExpr conjugate(const RatExpr& e) {
  std::vector<Factor> fs;
  fs.reserve(e.factors().size());
  for (const auto& f : e.factors()) fs.push_back({f.base.conjugate(), f.power});
  return RatExpr(e.residual().conjugate(), std::move(fs));
}

RatExpr wirtinger(const RatExpr& e, Var v) {
  RatExpr result(e.residual().derivative(v), e.factors());
  const auto& fs = e.factors();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    PolyExpr db = fs[k].base.derivative(v);
    if (db.is_zero()) continue;
    std::vector<Factor> reduced = fs;
    reduced[k].power -= 1;
    RatExpr term(e.residual() * db.scaled(static_cast<double>(fs[k].power)), std::move(reduced));
    result = result + term;
  }
  return result;
}

Complex evaluate(const RatExpr& e, Complex z, Complex w, double tau_den) {
  Complex value = e.residual().evaluate(z, w);
  for (const auto& f : e.factors()) {
    const Complex b = f.base.evaluate(z, w);
    if (f.power < 0 && std::abs(b) <= tau_den * f.base.scale()) {
      throw PoleProximity("denominator vanishes at the evaluation point");
    }
    value *= ipow(b, f.power);
  }
  return value;
}

Modulus modulus_at(const RatExpr& e, Complex z, Complex w, double tau_den) {
  Modulus m{std::abs(e.residual().evaluate(z, w)), e.residual().scale()};
  const auto& fs = e.factors();
  std::vector<bool> used(fs.size(), false);

  auto check_pole = [&](const PolyExpr& base, double modulus) {
    if (modulus <= tau_den * base.scale()) throw PoleProximity("denominator vanishes at the evaluation point");
  };

  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const PolyExpr& b = fs[i].base;
    const double mod_b = std::abs(b.evaluate(z, w));

    // Look for the conjugate partner: conj(b) = unit * fs[j].base.
    const PolyExpr cb = b.conjugate();
    const Complex unit = cb.leading().coeff;
    const PolyExpr cb_monic = cb.scaled(1.0 / unit);
    std::size_t partner = fs.size();
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      if (!used[j] && fs[j].base == cb_monic) {
        partner = j;
        break;
      }
    }

    if (partner == fs.size()) {
      const int p = fs[i].power;
      if (p < 0) {
        check_pole(b, mod_b);
        const double f = ipow(mod_b, p);
        m.value *= f;
        m.scale *= f;
      } else {
        m.value *= ipow(mod_b, p);
        m.scale *= ipow(b.scale(), p);
      }
      continue;
    }

    used[partner] = true;
    // |fs[partner].base| = |b| / |unit|.
    const int pj = fs[partner].power;
    const int s = fs[i].power + pj;
    const double unit_factor = ipow(std::abs(unit), -pj);
    if (s < 0) {
      check_pole(b, mod_b);
      const double f = ipow(mod_b, s) * unit_factor;
      m.value *= f;
      m.scale *= f;
    } else {
      m.value *= ipow(mod_b, s) * unit_factor;
      m.scale *= ipow(b.scale(), s) * unit_factor;
    }
  }
  return m;
}

bool approx_equal(const RatExpr& a, const RatExpr& b, double rel_tol) {
  if (a.factors().size() != b.factors().size()) return false;
  for (std::size_t i = 0; i < a.factors().size(); ++i) {
    if (a.factors()[i].power != b.factors()[i].power) return false;
    if (!approx_equal(a.factors()[i].base, b.factors()[i].base, rel_tol)) return false;
  }
  return approx_equal(a.residual(), b.residual(), rel_tol);
}

}  // namespace bishop

#include <algorithm>
#include <cmath>
#include <map>

#include "bishop/errors.hpp"
#include "bishop/expr.hpp"

namespace bishop {

namespace {

// Coefficients whose modulus falls below this fraction of the largest
// contribution summed into them are treated as exact cancellation.
constexpr double kCancelTol = 1e-13;

struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
};

struct Bucket {
  Complex sum{};
  double max_contribution = 0.0;
};

class Accumulator {
 public:
  void add(const Exponents& e, Complex c) {
    auto& b = buckets_[e];
    b.sum += c;
    b.max_contribution = std::max(b.max_contribution, std::abs(c));
  }

  std::vector<Monomial> take() {
    std::vector<Monomial> out;
    out.reserve(buckets_.size());
    for (const auto& [e, b] : buckets_) {
      if (std::abs(b.sum) > kCancelTol * b.max_contribution) out.push_back({b.sum, e});
    }
    buckets_.clear();
    return out;
  }

 private:
  std::map<Exponents, Bucket, GrlexGreater> buckets_;
};

PolyExpr from_sorted(std::vector<Monomial> terms) { return PolyExpr::from_terms(std::move(terms)); }

struct PowerTable {
  std::array<std::vector<Complex>, 4> pw;

  PowerTable(const PolyExpr& p, Complex z, Complex w) {
    const std::array<Complex, 4> vals{z, w, std::conj(z), std::conj(w)};
    for (int v = 0; v < 4; ++v) {
      const int n = p.max_exponent(static_cast<Var>(v));
      pw[v].resize(n + 1);
      pw[v][0] = 1.0;
      for (int k = 1; k <= n; ++k) pw[v][k] = pw[v][k - 1] * vals[v];
    }
  }

  Complex monomial(const Exponents& e) const {
    return pw[0][e.e[0]] * pw[1][e.e[1]] * pw[2][e.e[2]] * pw[3][e.e[3]];
  }
};

}  // namespace

bool Exponents::divides(const Exponents& other) const {
  for (int i = 0; i < 4; ++i) {
    if (e[i] > other.e[i]) return false;
  }
  return true;
}

Exponents Exponents::operator+(const Exponents& o) const {
  Exponents r;
  for (int i = 0; i < 4; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
  return r;
}

Exponents Exponents::operator-(const Exponents& o) const {
  Exponents r;
  for (int i = 0; i < 4; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
  return r;
}

std::strong_ordering operator<=>(const Exponents& a, const Exponents& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.e <=> b.e;
}

PolyExpr PolyExpr::constant(Complex c) { return from_terms({{c, {}}}); }

PolyExpr PolyExpr::variable(Var v) {
  Exponents e;
  e[v] = 1;
  return from_terms({{1.0, e}});
}

PolyExpr PolyExpr::monomial(Complex c, Exponents e) { return from_terms({{c, e}}); }

PolyExpr PolyExpr::from_terms(std::vector<Monomial> terms) {
  Accumulator acc;
  for (const auto& t : terms) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw InvalidArgument("non-finite coefficient");
    }
    if (t.coeff != 0.0) acc.add(t.exps, t.coeff);
  }
  PolyExpr p;
  p.terms_ = acc.take();
  return p;
}

bool PolyExpr::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.degree() == 0); }

int PolyExpr::degree() const { return terms_.empty() ? 0 : terms_.front().exps.degree(); }

int PolyExpr::max_exponent(Var v) const {
  int m = 0;
  for (const auto& t : terms_) m = std::max<int>(m, t.exps[v]);
  return m;
}

double PolyExpr::scale() const {
  double s = 0.0;
  for (const auto& t : terms_) s = std::max(s, std::abs(t.coeff));
  return s;
}

Exponents PolyExpr::content() const {
  if (terms_.empty()) return {};
  Exponents m = terms_.front().exps;
  for (const auto& t : terms_) {
    for (int i = 0; i < 4; ++i) m.e[i] = std::min(m.e[i], t.exps.e[i]);
  }
  return m;
}

Complex PolyExpr::evaluate(Complex z, Complex w) const {
  if (terms_.empty()) return 0.0;
  PowerTable table(*this, z, w);
  Complex sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * table.monomial(t.exps);
  return sum;
}

PolyExpr PolyExpr::derivative(Var v) const {
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    const auto k = t.exps[v];
    if (k == 0) continue;
    Monomial m = t;
    m.coeff *= static_cast<double>(k);
    m.exps[v] = static_cast<std::uint16_t>(k - 1);
    out.push_back(m);
  }
  return from_sorted(std::move(out));
}

PolyExpr PolyExpr::conjugate() const {
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({std::conj(t.coeff), t.exps.conjugate()});
  return from_sorted(std::move(out));
}

PolyExpr PolyExpr::scaled(Complex c) const {
  if (c == 0.0) return {};
  std::vector<Monomial> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.coeff * c, t.exps});
  return from_sorted(std::move(out));
}

PolyExpr PolyExpr::shifted(const Exponents& m) const {
  PolyExpr p = *this;
  for (auto& t : p.terms_) t.exps = t.exps + m;
  return p;
}

PolyExpr PolyExpr::pow(unsigned n) const {
  PolyExpr result = constant(1.0);
  PolyExpr base = *this;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::optional<PolyExpr> PolyExpr::divide_exact(const PolyExpr& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (terms_.empty()) return PolyExpr{};

  std::map<Exponents, Bucket, GrlexGreater> rem;
  for (const auto& t : terms_) rem[t.exps] = {t.coeff, std::abs(t.coeff)};

  const Monomial& lead = divisor.leading();
  std::vector<Monomial> quotient;
  const std::size_t guard = 64 * (terms_.size() + 1) * (divisor.size() + 1) + 1024;
  for (std::size_t iter = 0; !rem.empty(); ++iter) {
    if (iter > guard) return std::nullopt;
    auto it = rem.begin();
    if (std::abs(it->second.sum) <= kCancelTol * it->second.max_contribution) {
      rem.erase(it);
      continue;
    }
    if (!lead.exps.divides(it->first)) return std::nullopt;
    const Monomial q{it->second.sum / lead.coeff, it->first - lead.exps};
    quotient.push_back(q);
    for (const auto& d : divisor.terms()) {
      const Complex c = q.coeff * d.coeff;
      auto& b = rem[q.exps + d.exps];
      b.max_contribution = std::max({b.max_contribution, std::abs(b.sum), std::abs(c)});
      b.sum -= c;
    }
    for (auto jt = rem.begin(); jt != rem.end();) {
      if (std::abs(jt->second.sum) <= kCancelTol * jt->second.max_contribution) {
        jt = rem.erase(jt);
      } else {
        ++jt;
      }
    }
  }
  return from_sorted(std::move(quotient));
}

PolyExpr operator+(const PolyExpr& a, const PolyExpr& b) {
  std::vector<Monomial> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return PolyExpr::from_terms(std::move(all));
}

PolyExpr operator-(const PolyExpr& a, const PolyExpr& b) { return a + (-b); }

PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
  Accumulator acc;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) acc.add(x.exps + y.exps, x.coeff * y.coeff);
  }
  PolyExpr p;
  p.terms_ = acc.take();
  return p;
}

bool poly_less(const PolyExpr& a, const PolyExpr& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (ta[i].exps != tb[i].exps) return ta[i].exps > tb[i].exps;
    if (ta[i].coeff.real() != tb[i].coeff.real()) return ta[i].coeff.real() < tb[i].coeff.real();
    if (ta[i].coeff.imag() != tb[i].coeff.imag()) return ta[i].coeff.imag() < tb[i].coeff.imag();
  }
  return ta.size() < tb.size();
}

bool approx_equal(const PolyExpr& a, const PolyExpr& b, double rel_tol) {
  const double s = std::max(a.scale(), b.scale());
  const auto d = a - b;
  return d.scale() <= rel_tol * s;
}

}  // namespace bishop

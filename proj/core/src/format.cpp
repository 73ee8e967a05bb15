#include <charconv>
#include <cmath>
#include <string>

#include "bishop/expr.hpp"

namespace bishop {

namespace {

std::string number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string monomial_text(const Exponents& e) {
  static constexpr const char* kNames[4] = {"z", "w", "zb", "wb"};
  std::string out;
  for (int v = 0; v < 4; ++v) {
    if (e.e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += kNames[v];
    if (e.e[v] > 1) out += '^' + std::to_string(e.e[v]);
  }
  return out;
}

// Term body without its sign; `negative` reports whether a leading minus is
// needed.
std::string term_body(const Monomial& m, bool& negative) {
  const std::string mono = monomial_text(m.exps);
  const double re = m.coeff.real(), im = m.coeff.imag();
  std::string coeff;
  negative = false;
  if (im == 0.0) {
    negative = re < 0.0;
    const double mag = std::abs(re);
    if (!(mag == 1.0 && !mono.empty())) coeff = number(mag);
  } else if (re == 0.0) {
    negative = im < 0.0;
    const double mag = std::abs(im);
    coeff = mag == 1.0 ? "i" : number(mag) + "*i";
  } else {
    coeff = "(" + number(re) + (im < 0.0 ? " - " : " + ") + number(std::abs(im)) + "*i)";
  }
  if (coeff.empty()) return mono;
  if (mono.empty()) return coeff;
  return coeff + "*" + mono;
}

std::string base_power(const PolyExpr& base, int power, bool denominator = false) {
  if (denominator && power == 1 && base.size() > 1) return "(" + format_poly(base) + ")";
  if (base.size() == 1) {
    const std::string v = format_poly(base);
    return power == 1 ? v : v + "^" + std::to_string(power);
  }
  return "(" + format_poly(base) + ")^" + std::to_string(power);
}

}  // namespace

std::string format_poly(const PolyExpr& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = false;
    std::string body = term_body(t, negative);
    if (first) {
      if (negative) {
        // Unary minus binds tighter than '^' in the grammar: print -1*z^2,
        // never -z^2.
        const bool starts_with_var = !body.empty() && body[0] != 'i' && body[0] != '(' &&
                                     !(body[0] >= '0' && body[0] <= '9');
        out += starts_with_var ? "-1*" + body : "-" + body;
      } else {
        out += body;
      }
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::string format_expr(const RatExpr& e) {
  if (e.factors().empty()) return format_poly(e.residual());

  std::string num;
  const PolyExpr& r = e.residual();
  const bool unit_residual = r.size() == 1 && r.leading().exps.degree() == 0 && r.leading().coeff == Complex(1.0);
  std::string den;
  bool any_positive = false;
  for (const auto& f : e.factors()) {
    if (f.power > 0) {
      if (!num.empty()) num += '*';
      num += base_power(f.base, f.power);
      any_positive = true;
    } else {
      // One division per base: "/(a)*(b)" would parse as a single product base.
      den += "/" + base_power(f.base, -f.power, true);
    }
  }
  std::string head;
  if (!unit_residual || !any_positive) head = r.size() > 1 ? "(" + format_poly(r) + ")" : format_poly(r);
  std::string out = head;
  if (!num.empty()) out += (out.empty() ? "" : "*") + num;
  out += den;
  return out;
}

}  // namespace bishop

#pragma once

// Rational expressions in z, w, zb (z conjugate), wb (w conjugate) with
// complex double coefficients, and their Wirtinger calculus.
//
// A RatExpr is stored in factored form
//
//     residual * prod_k base_k ^ power_k
//
// where the residual is an expanded polynomial and each base is a monic,
// content-free polynomial (or a bare variable) carried with a non-zero
// integer power. Bases come from divisions and from powers of sums, so an
// expression such as zb*(1-w)^4/(1-wb) keeps (w - 1) and (wb - 1) visible
// through differentiation. Cancellation is limited to exact division of the
// residual by denominator bases; there is no general multivariate GCD.

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bishop {

using Complex = std::complex<double>;

/// Relative pole threshold used by evaluate().
inline constexpr double kTauDen = 1e-9;

enum class Var : std::uint8_t { z = 0, w = 1, zb = 2, wb = 3 };

/// Exponent vector over (z, w, zb, wb), ordered graded-lexicographically.
struct Exponents {
  std::array<std::uint16_t, 4> e{};

  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  std::uint16_t operator[](Var v) const { return e[static_cast<int>(v)]; }
  std::uint16_t& operator[](Var v) { return e[static_cast<int>(v)]; }

  /// Swaps z <-> zb and w <-> wb.
  Exponents conjugate() const { return {{e[2], e[3], e[0], e[1]}}; }
  bool divides(const Exponents& other) const;
  Exponents operator+(const Exponents& o) const;
  Exponents operator-(const Exponents& o) const;  // requires divides()

  friend bool operator==(const Exponents&, const Exponents&) = default;
  friend std::strong_ordering operator<=>(const Exponents& a, const Exponents& b);
};

struct Monomial {
  Complex coeff;
  Exponents exps;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sparse polynomial. Terms are kept in descending grlex order with distinct
/// exponent vectors and non-zero coefficients; the zero polynomial has no
/// terms.
class PolyExpr {
 public:
  PolyExpr() = default;

  static PolyExpr constant(Complex c);
  static PolyExpr variable(Var v);
  static PolyExpr monomial(Complex c, Exponents e);
  /// Combines like terms, drops zeros and sorts. Throws InvalidArgument on
  /// non-finite coefficients.
  static PolyExpr from_terms(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Monomial& leading() const { return terms_.front(); }
  int degree() const;
  /// Largest exponent of `v` over all terms.
  int max_exponent(Var v) const;

  /// Max coefficient modulus; 0 for the zero polynomial.
  double scale() const;
  /// Componentwise minimum exponent (largest monomial dividing every term).
  Exponents content() const;

  Complex evaluate(Complex z, Complex w) const;

  PolyExpr derivative(Var v) const;
  PolyExpr conjugate() const;
  PolyExpr scaled(Complex c) const;
  PolyExpr shifted(const Exponents& m) const;  // multiply by a monomial
  PolyExpr pow(unsigned n) const;

  /// Quotient when `divisor` divides this polynomial exactly (up to rounding
  /// noise), otherwise nullopt.
  std::optional<PolyExpr> divide_exact(const PolyExpr& divisor) const;

  PolyExpr operator-() const { return scaled(-1.0); }
  friend PolyExpr operator+(const PolyExpr& a, const PolyExpr& b);
  friend PolyExpr operator-(const PolyExpr& a, const PolyExpr& b);
  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b);

  friend bool operator==(const PolyExpr&, const PolyExpr&) = default;

 private:
  std::vector<Monomial> terms_;
};

/// Total order on polynomials used to sort factor lists.
bool poly_less(const PolyExpr& a, const PolyExpr& b);

struct Factor {
  PolyExpr base;
  int power = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

class RatExpr {
 public:
  RatExpr() = default;
  RatExpr(PolyExpr p);  // NOLINT(google-explicit-constructor)
  /// Normalizes: bases made monic and content-free, equal bases merged,
  /// denominator bases cancelled against the residual where they divide it.
  RatExpr(PolyExpr residual, std::vector<Factor> factors);

  static RatExpr constant(Complex c) { return RatExpr(PolyExpr::constant(c)); }
  static RatExpr variable(Var v) { return RatExpr(PolyExpr::variable(v)); }
  /// `p` kept as a tracked base raised to `power` (p^power for power > 0,
  /// 1/p^-power for power < 0).
  static RatExpr tracked(const PolyExpr& p, int power);

  const PolyExpr& residual() const { return residual_; }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Expanded numerator and denominator. The denominator is monic.
  PolyExpr num() const;
  PolyExpr den() const;

  bool is_zero() const { return residual_.is_zero(); }
  bool is_polynomial() const;
  /// Max coefficient modulus of num().
  double scale() const { return num().scale(); }

  friend bool operator==(const RatExpr&, const RatExpr&) = default;

 private:
  void normalize();

  PolyExpr residual_;
  std::vector<Factor> factors_;
};

enum class ArithOp { add, sub, mul, div };

/// Throws DivisionByZero when dividing by the zero expression.
RatExpr arith(const RatExpr& a, const RatExpr& b, ArithOp op);
RatExpr operator+(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a, const RatExpr& b);
RatExpr operator*(const RatExpr& a, const RatExpr& b);
RatExpr operator/(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a);
RatExpr pow(const RatExpr& a, unsigned n);

/// z <-> zb, w <-> wb, coefficients conjugated.
RatExpr conjugate(const RatExpr& e);

/// Formal partial derivative with z, w, zb, wb independent.
RatExpr wirtinger(const RatExpr& e, Var v);

/// num(z, w) / den(z, w). Throws PoleProximity when a denominator base is
/// below tau_den times its scale.
Complex evaluate(const RatExpr& e, Complex z, Complex w, double tau_den = kTauDen);

/// |e(z, w)| together with a scale for relative zero tests: coefficient
/// scales for the residual and numerator bases, actual moduli for
/// denominator bases. Conjugate base pairs b, conj(b) are combined exactly through
/// |b| = |conj(b)|, so (1 - w)^a / (1 - wb)^b has modulus |1 - w|^(a - b)
/// and is finite at w = 1 whenever a >= b.
struct Modulus {
  double value = 0.0;
  double scale = 0.0;
};
Modulus modulus_at(const RatExpr& e, Complex z, Complex w, double tau_den = kTauDen);

/// Structural equality with relative coefficient tolerance.
bool approx_equal(const PolyExpr& a, const PolyExpr& b, double rel_tol);
bool approx_equal(const RatExpr& a, const RatExpr& b, double rel_tol);

/// Parses the expression grammar:
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' UINT)?
///   base   := NUMBER | 'i' | 'z' | 'w' | 'zb' | 'wb'
///           | 'conj' '(' expr ')' | '(' expr ')' | '-' base
///
/// Throws ParseError (with byte offset) on malformed input, on division by a
/// zero expression, and on non-integer or negative exponents.
RatExpr parse_expr(std::string_view text);

/// Canonical text; parse_expr(format_expr(e)) == e.
std::string format_expr(const RatExpr& e);
std::string format_poly(const PolyExpr& p);

}  // namespace bishop

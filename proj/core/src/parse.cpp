#include <cctype>
#include <charconv>
#include <string>

#include "bishop/errors.hpp"
#include "bishop/expr.hpp"

namespace bishop {

namespace {

constexpr unsigned kMaxExponent = 1000;

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= s_.size()) {
      tok_ = {Tok::end, start, {}};
      return;
    }
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
      if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
        std::size_t j = i_ + 1;
        if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
        if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
          while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
          i_ = j;
        }
      }
      tok_ = {Tok::number, start, s_.substr(start, i_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      tok_ = {Tok::ident, start, s_.substr(start, i_ - start)};
      return;
    }
    ++i_;
    switch (c) {
      case '+': tok_ = {Tok::plus, start, s_.substr(start, 1)}; return;
      case '-': tok_ = {Tok::minus, start, s_.substr(start, 1)}; return;
      case '*': tok_ = {Tok::star, start, s_.substr(start, 1)}; return;
      case '/': tok_ = {Tok::slash, start, s_.substr(start, 1)}; return;
      case '^': tok_ = {Tok::caret, start, s_.substr(start, 1)}; return;
      case '(': tok_ = {Tok::lparen, start, s_.substr(start, 1)}; return;
      case ')': tok_ = {Tok::rparen, start, s_.substr(start, 1)}; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Token tok_{Tok::end, 0, {}};
};

class Parser {
 public:
  explicit Parser(std::string_view s) : lex_(s) {}

  RatExpr parse() {
    RatExpr e = expr();
    if (lex_.peek().kind != Tok::end) throw ParseError("unexpected '" + std::string(lex_.peek().text) + "'", lex_.peek().pos);
    return e;
  }

 private:
  RatExpr expr() {
    RatExpr acc = term();
    while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
      const bool plus = lex_.next().kind == Tok::plus;
      RatExpr rhs = term();
      acc = plus ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  RatExpr term() {
    RatExpr acc = factor();
    while (lex_.peek().kind == Tok::star || lex_.peek().kind == Tok::slash) {
      const Token op = lex_.next();
      const std::size_t pos = lex_.peek().pos;
      RatExpr rhs = factor();
      if (op.kind == Tok::star) {
        acc = acc * rhs;
      } else {
        if (rhs.is_zero()) throw ParseError("division by zero", pos);
        acc = acc / rhs;
      }
    }
    return acc;
  }

  RatExpr factor() {
    RatExpr b = base();
    if (lex_.peek().kind != Tok::caret) return b;
    lex_.next();
    const Token t = lex_.peek();
    if (t.kind == Tok::minus) throw ParseError("negative exponent", t.pos);
    if (t.kind != Tok::number) throw ParseError("expected an unsigned integer exponent", t.pos);
    lex_.next();
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) throw ParseError("non-integer exponent", t.pos);
    if (n > kMaxExponent) throw ParseError("exponent too large", t.pos);
    return pow(b, n);
  }

  RatExpr base() {
    const Token t = lex_.next();
    switch (t.kind) {
      case Tok::number: {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) throw ParseError("malformed number", t.pos);
        return RatExpr::constant(v);
      }
      case Tok::ident: {
        if (t.text == "i") return RatExpr::constant(Complex(0.0, 1.0));
        if (t.text == "z") return RatExpr::variable(Var::z);
        if (t.text == "w") return RatExpr::variable(Var::w);
        if (t.text == "zb") return RatExpr::variable(Var::zb);
        if (t.text == "wb") return RatExpr::variable(Var::wb);
        if (t.text == "conj") {
          expect(Tok::lparen, "'(' after conj");
          RatExpr inner = expr();
          expect(Tok::rparen, "')'");
          return conjugate(inner);
        }
        throw ParseError("unknown identifier '" + std::string(t.text) + "'", t.pos);
      }
      case Tok::lparen: {
        RatExpr inner = expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::minus:
        return -base();
      case Tok::end:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + std::string(t.text) + "'", t.pos);
    }
  }

  void expect(Tok kind, const char* what) {
    const Token t = lex_.next();
    if (t.kind != kind) throw ParseError(std::string("expected ") + what, t.pos);
  }

  Lexer lex_;
};

}  // namespace

RatExpr parse_expr(std::string_view text) {
  try {
    return Parser(text).parse();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace bishop

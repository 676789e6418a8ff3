#include "liouville/expr.hpp"

#include "liouville/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace liouville {

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  Expr lhs;
  Expr rhs;
};

namespace {

struct Spelling {
  Expr::Kind kind;
  std::string_view name;
};

constexpr std::array<Spelling, 7> kFunctions{{
    {Expr::Kind::Abs, "abs"},
    {Expr::Kind::Ln, "ln"},
    {Expr::Kind::Exp, "exp"},
    {Expr::Kind::Sqrt, "sqrt"},
    {Expr::Kind::Sign, "sign"},
    {Expr::Kind::Min, "min"},
    {Expr::Kind::Max, "max"},
}};

std::string_view function_name(Expr::Kind kind) {
  for (const auto& s : kFunctions)
    if (s.kind == kind) return s.name;
  return {};
}

} // namespace

Expr Expr::literal(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("expression literal must be finite");
  return Expr(std::make_shared<const Node>(Node{Kind::Literal, value, Expr(), Expr()}));
}

Expr Expr::variable() {
  return Expr(std::make_shared<const Node>(Node{Kind::Variable, 0.0, Expr(), Expr()}));
}

Expr Expr::unary(Kind kind, Expr operand) {
  if (!is_unary(kind)) throw std::invalid_argument("not a unary expression kind");
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, std::move(operand), Expr()}));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (!is_binary(kind)) throw std::invalid_argument("not a binary expression kind");
  return Expr(std::make_shared<const Node>(Node{kind, 0.0, std::move(lhs), std::move(rhs)}));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }

const Expr& Expr::lhs() const { return node_->lhs; }
const Expr& Expr::rhs() const { return node_->rhs; }

bool Expr::is_unary(Kind kind) {
  switch (kind) {
  case Kind::Neg:
  case Kind::Abs:
  case Kind::Ln:
  case Kind::Exp:
  case Kind::Sqrt:
  case Kind::Sign:
    return true;
  default:
    return false;
  }
}

bool Expr::is_binary(Kind kind) {
  switch (kind) {
  case Kind::Add:
  case Kind::Sub:
  case Kind::Mul:
  case Kind::Div:
  case Kind::Pow:
  case Kind::Min:
  case Kind::Max:
    return true;
  default:
    return false;
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
  case Expr::Kind::Literal:
    return a.value() == b.value();
  case Expr::Kind::Variable:
    return true;
  default:
    if (Expr::is_unary(a.kind())) return a.lhs() == b.lhs();
    return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(Expr::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = Expr::binary(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(Expr::Kind::Mul, lhs, unary());
      else if (accept('/'))
        lhs = Expr::binary(Expr::Kind::Div, lhs, unary());
      else
        return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Kind::Neg, unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::binary(Expr::Kind::Pow, base, unary());
    return base;
  }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

  Expr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError(pos_, "number, 't', function or '('");
    const char c = src_[pos_];
    if (is_digit(c) || c == '.') return number();
    if (is_alpha(c)) return identifier();
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    }
    throw SyntaxError(pos_, "number, 't', function or '('");
  }

  Expr number() {
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < src_.size() && is_digit(src_[pos_])) {
      ++pos_;
      digits = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        ++pos_;
        digits = true;
      }
    }
    if (!digits) throw SyntaxError(start, "digits");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p >= src_.size() || !is_digit(src_[p])) throw SyntaxError(p, "exponent digits");
      while (p < src_.size() && is_digit(src_[p])) ++p;
      pos_ = p;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(value))
      throw SyntaxError(start, "finite number");
    return Expr::literal(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "t") return Expr::variable();
    for (const auto& fn : kFunctions) {
      if (fn.name != name) continue;
      expect('(');
      Expr first = expr();
      if (Expr::is_binary(fn.kind)) {
        expect(',');
        Expr second = expr();
        expect(')');
        return Expr::binary(fn.kind, first, second);
      }
      expect(')');
      return Expr::unary(fn.kind, first);
    }
    throw UnknownIdentifier(start, std::string(name));
  }
};

} // namespace

Expr parse_expr(std::string_view src) { return Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
  case Expr::Kind::Add:
  case Expr::Kind::Sub:
    return 1;
  case Expr::Kind::Mul:
  case Expr::Kind::Div:
    return 2;
  case Expr::Kind::Neg:
    return 3;
  case Expr::Kind::Pow:
    return 4;
  case Expr::Kind::Literal:
    return e.value() < 0 ? 3 : 5;
  default:
    return 5;
  }
}

std::string format_literal(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::abs(v));
  std::string digits(buf.data(), ptr);
  return v < 0 || (v == 0 && std::signbit(v)) ? "-" + digits : digits;
}

std::string parenthesize(const Expr& e, bool wrap) {
  return wrap ? "(" + to_string(e) + ")" : to_string(e);
}

} // namespace

std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
  case K::Literal:
    return format_literal(e.value());
  case K::Variable:
    return "t";
  case K::Neg:
    return "-" + parenthesize(e.lhs(), precedence(e.lhs()) < 3);
  case K::Abs:
  case K::Ln:
  case K::Exp:
  case K::Sqrt:
  case K::Sign:
    return std::string(function_name(e.kind())) + "(" + to_string(e.lhs()) + ")";
  case K::Min:
  case K::Max:
    return std::string(function_name(e.kind())) + "(" + to_string(e.lhs()) + ", " +
           to_string(e.rhs()) + ")";
  case K::Pow:
    // Left operand must be an atom; the right operand is parsed as `unary`.
    return parenthesize(e.lhs(), precedence(e.lhs()) <= 4) + "^" +
           parenthesize(e.rhs(), precedence(e.rhs()) < 3);
  default: {
    const int prec = precedence(e);
    const char* op = e.kind() == K::Add ? " + " : e.kind() == K::Sub ? " - " : e.kind() == K::Mul ? "*" : "/";
    return parenthesize(e.lhs(), precedence(e.lhs()) < prec) + op +
           parenthesize(e.rhs(), precedence(e.rhs()) <= prec);
  }
  }
}

// ---------------------------------------------------------------------------
// Evaluator

namespace {

double checked(double value, const Expr& e) {
  if (std::isnan(value)) throw DomainError("undefined result", to_string(e));
  return value;
}

} // namespace

double eval_expr(const Expr& e, double t) {
  using K = Expr::Kind;
  switch (e.kind()) {
  case K::Literal:
    return e.value();
  case K::Variable:
    return t;
  case K::Neg:
    return -eval_expr(e.lhs(), t);
  case K::Abs:
    return std::abs(eval_expr(e.lhs(), t));
  case K::Ln: {
    const double x = eval_expr(e.lhs(), t);
    if (!(x > 0)) throw DomainError("logarithm of a non-positive value", to_string(e));
    return std::log(x);
  }
  case K::Exp:
    return std::exp(eval_expr(e.lhs(), t));
  case K::Sqrt: {
    const double x = eval_expr(e.lhs(), t);
    if (x < 0) throw DomainError("square root of a negative value", to_string(e));
    return std::sqrt(x);
  }
  case K::Sign: {
    const double x = eval_expr(e.lhs(), t);
    return x > 0 ? 1.0 : x < 0 ? -1.0 : 0.0;
  }
  case K::Add:
    return checked(eval_expr(e.lhs(), t) + eval_expr(e.rhs(), t), e);
  case K::Sub:
    return checked(eval_expr(e.lhs(), t) - eval_expr(e.rhs(), t), e);
  case K::Mul:
    return checked(eval_expr(e.lhs(), t) * eval_expr(e.rhs(), t), e);
  case K::Div: {
    const double num = eval_expr(e.lhs(), t);
    const double den = eval_expr(e.rhs(), t);
    if (den == 0) throw DomainError("division by zero", to_string(e));
    return checked(num / den, e);
  }
  case K::Pow: {
    const double base = eval_expr(e.lhs(), t);
    const double exponent = eval_expr(e.rhs(), t);
    if (base < 0 && std::trunc(exponent) != exponent)
      throw DomainError("non-integer power of a negative base", to_string(e));
    if (base == 0 && exponent < 0) throw DomainError("division by zero", to_string(e));
    return checked(std::pow(base, exponent), e);
  }
  case K::Min:
    return checked(std::fmin(eval_expr(e.lhs(), t), eval_expr(e.rhs(), t)), e);
  case K::Max:
    return checked(std::fmax(eval_expr(e.lhs(), t), eval_expr(e.rhs(), t)), e);
  }
  throw std::logic_error("unhandled expression kind");
}

} // namespace liouville

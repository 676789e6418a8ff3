#pragma once

// A small expression language for scalar functions of one variable `t`.
//
// Grammar (whitespace ignored):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?            right-associative, binds tightest
//   atom   := number | 't' | name '(' expr (',' expr)? ')' | '(' expr ')'
//
// Unary functions: abs, ln, exp, sqrt, sign.  Binary functions: min, max.

#include <memory>
#include <string>
#include <string_view>

namespace liouville {

class Expr {
public:
  enum class Kind {
    Literal,
    Variable,
    Neg,
    Abs,
    Ln,
    Exp,
    Sqrt,
    Sign,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Min,
    Max,
  };

  static Expr literal(double value);
  static Expr variable();
  static Expr unary(Kind kind, Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);

  Kind kind() const;
  double value() const;     ///< Literal payload; 0 for other kinds.
  const Expr& lhs() const;  ///< Operand of unary nodes, left operand of binary nodes.
  const Expr& rhs() const;

  static bool is_unary(Kind kind);
  static bool is_binary(Kind kind);

  friend bool operator==(const Expr& a, const Expr& b);

private:
  struct Node;
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse_expr(std::string_view src);

/// IEEE double evaluation.  Overflow may produce +-inf; a NaN is never returned,
/// invalid operations raise DomainError naming the offending subexpression.
double eval_expr(const Expr& e, double t);

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string to_string(const Expr& e);

} // namespace liouville

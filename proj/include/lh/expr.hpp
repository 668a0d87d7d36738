#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lh/xpoly.hpp"

namespace lh {

/// AST for the family-definition expression language.
///
/// Grammar (normative for all config files):
///   expr     := term (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := base ('^' uint)?
///   base     := rational | ident | '(' expr ')' | '-' base
///   rational := int ('/' uint)?
/// Standard precedence, '^' binds tightest, +,-,*,/ associate left.
/// Implicit multiplication is not part of the grammar ("2x" is an error).
struct ExprAst {
  enum class Kind { Literal, Ident, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind;
  std::size_t pos = 0;             // source offset, for error reporting
  Rational value;                  // Literal
  std::string name;                // Ident
  unsigned exponent = 0;           // Pow
  std::unique_ptr<ExprAst> lhs, rhs;

  bool equals(const ExprAst& o) const;
};

using ExprPtr = std::unique_ptr<ExprAst>;

/// Parses `src`; identifiers must be "x", "n", or a declared parameter.
/// Throws ParseError (with position) on malformed input.
ExprPtr parse_expr(std::string_view src, const std::vector<std::string>& declared_params);

/// Minimal-parenthesis rendering; parse(pretty_print(a)) equals a.
std::string pretty_print(const ExprAst& ast);

/// Exact evaluation over the ring.  Division by a syntactically zero
/// subexpression raises ZeroDenominatorError.
RatFun eval_to_ratfun(const ExprAst& ast, const RingPtr& ring);

/// As eval_to_ratfun, but requires the result to be polynomial in x
/// (denominator free of x after normalization).
XPoly eval_to_xpoly(const ExprAst& ast, const RingPtr& ring);

}  // namespace lh

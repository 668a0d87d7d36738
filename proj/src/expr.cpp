#include "lh/expr.hpp"

#include <cctype>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

bool ExprAst::equals(const ExprAst& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Literal: return value == o.value;
    case Kind::Ident: return name == o.name;
    case Kind::Neg: return lhs->equals(*o.lhs);
    case Kind::Pow: return exponent == o.exponent && lhs->equals(*o.lhs);
    default: return lhs->equals(*o.lhs) && rhs->equals(*o.rhs);
  }
}

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;
  const std::vector<std::string>& params;

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  ExprPtr make(ExprAst::Kind k, std::size_t at) {
    auto n = std::make_unique<ExprAst>();
    n->kind = k;
    n->pos = at;
    return n;
  }

  bool valid_ident(const std::string& name) const {
    if (name == "x" || name == "n") return true;
    for (const auto& p : params)
      if (p == name) return true;
    return false;
  }

  ExprPtr parse_uint_literal() {
    skip_ws();
    std::size_t at = pos;
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected integer literal");
    std::string digits;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      digits += src[pos++];
    auto n = make(ExprAst::Kind::Literal, at);
    n->value = *Rational::parse(digits);
    return n;
  }

  ExprPtr parse_base() {
    skip_ws();
    std::size_t at = pos;
    if (pos >= src.size()) fail("unexpected end of expression");
    char c = src[pos];
    if (c == '-') {
      ++pos;
      auto n = make(ExprAst::Kind::Neg, at);
      n->lhs = parse_base();
      return n;
    }
    if (c == '(') {
      ++pos;
      ExprPtr inner = parse_sum();
      skip_ws();
      if (pos >= src.size() || src[pos] != ')') fail("unbalanced parentheses");
      ++pos;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_uint_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        name += src[pos++];
      if (!valid_ident(name)) { pos = at; fail("unknown identifier '" + name + "'"); }
      auto n = make(ExprAst::Kind::Ident, at);
      n->name = name;
      return n;
    }
    fail(std::string("malformed token '") + c + "'");
  }

  ExprPtr parse_factor() {
    ExprPtr b = parse_base();
    skip_ws();
    if (pos < src.size() && src[pos] == '^') {
      std::size_t at = pos;
      ++pos;
      skip_ws();
      if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
        fail("exponent must be a nonnegative integer literal");
      ExprPtr e = parse_uint_literal();
      if (!e->value.is_integer() || e->value.sign() < 0)
        fail("exponent must be a nonnegative integer literal");
      auto n = make(ExprAst::Kind::Pow, at);
      n->lhs = std::move(b);
      n->exponent = static_cast<unsigned>(e->value.num().get_ui());
      return n;
    }
    return b;
  }

  ExprPtr parse_term() {
    ExprPtr l = parse_factor();
    while (true) {
      char c = peek();
      if (c != '*' && c != '/') return l;
      std::size_t at = pos;
      ++pos;
      auto n = make(c == '*' ? ExprAst::Kind::Mul : ExprAst::Kind::Div, at);
      n->lhs = std::move(l);
      n->rhs = parse_factor();
      l = std::move(n);
    }
  }

  ExprPtr parse_sum() {
    ExprPtr l = parse_term();
    while (true) {
      char c = peek();
      if (c != '+' && c != '-') return l;
      std::size_t at = pos;
      ++pos;
      auto n = make(c == '+' ? ExprAst::Kind::Add : ExprAst::Kind::Sub, at);
      n->lhs = std::move(l);
      n->rhs = parse_term();
      l = std::move(n);
    }
  }

  ExprPtr run() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos != src.size()) fail("trailing input");
    return e;
  }
};

int precedence(ExprAst::Kind k) {
  switch (k) {
    case ExprAst::Kind::Add:
    case ExprAst::Kind::Sub: return 1;
    case ExprAst::Kind::Mul:
    case ExprAst::Kind::Div: return 2;
    case ExprAst::Kind::Neg: return 3;
    case ExprAst::Kind::Pow: return 4;
    default: return 5;
  }
}

void print_node(const ExprAst& a, std::ostringstream& os, int parent_prec, bool right_operand) {
  int prec = precedence(a.kind);
  bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
  if (parens) os << "(";
  switch (a.kind) {
    case ExprAst::Kind::Literal:
      // Parser-produced literals are nonnegative integers; fractions and
      // signs live in Div/Neg nodes.
      os << a.value.str();
      break;
    case ExprAst::Kind::Ident: os << a.name; break;
    case ExprAst::Kind::Neg:
      os << "-";
      print_node(*a.lhs, os, prec, false);
      break;
    case ExprAst::Kind::Pow:
      print_node(*a.lhs, os, prec + 1, false);
      os << "^" << a.exponent;
      break;
    case ExprAst::Kind::Add:
    case ExprAst::Kind::Sub:
    case ExprAst::Kind::Mul:
    case ExprAst::Kind::Div: {
      const char* op = a.kind == ExprAst::Kind::Add   ? " + "
                       : a.kind == ExprAst::Kind::Sub ? " - "
                       : a.kind == ExprAst::Kind::Mul ? "*"
                                                      : "/";
      print_node(*a.lhs, os, prec, false);
      os << op;
      print_node(*a.rhs, os, prec, true);
      break;
    }
  }
  if (parens) os << ")";
}

}  // namespace

ExprPtr parse_expr(std::string_view src, const std::vector<std::string>& declared_params) {
  Parser p{src, 0, declared_params};
  return p.run();
}

std::string pretty_print(const ExprAst& ast) {
  std::ostringstream os;
  print_node(ast, os, 0, false);
  return os.str();
}

RatFun eval_to_ratfun(const ExprAst& ast, const RingPtr& ring) {
  switch (ast.kind) {
    case ExprAst::Kind::Literal: return RatFun::constant(ring, ast.value);
    case ExprAst::Kind::Ident: return RatFun::variable(ring, ast.name);
    case ExprAst::Kind::Neg: return -eval_to_ratfun(*ast.lhs, ring);
    case ExprAst::Kind::Pow:
      return eval_to_ratfun(*ast.lhs, ring).pow(static_cast<int>(ast.exponent));
    case ExprAst::Kind::Add:
      return eval_to_ratfun(*ast.lhs, ring) + eval_to_ratfun(*ast.rhs, ring);
    case ExprAst::Kind::Sub:
      return eval_to_ratfun(*ast.lhs, ring) - eval_to_ratfun(*ast.rhs, ring);
    case ExprAst::Kind::Mul:
      return eval_to_ratfun(*ast.lhs, ring) * eval_to_ratfun(*ast.rhs, ring);
    case ExprAst::Kind::Div: {
      RatFun d = eval_to_ratfun(*ast.rhs, ring);
      if (d.is_zero()) throw ZeroDenominatorError("division by zero expression");
      return eval_to_ratfun(*ast.lhs, ring) / d;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

XPoly eval_to_xpoly(const ExprAst& ast, const RingPtr& ring) {
  return XPoly::from_ratfun(eval_to_ratfun(ast, ring));
}

}  // namespace lh

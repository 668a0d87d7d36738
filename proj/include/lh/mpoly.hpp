#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lh/rational.hpp"
#include "lh/ring.hpp"

namespace lh {

/// Exponent vector; length equals the ring size.
using Monomial = std::vector<unsigned>;

/// Graded-lexicographic order: compare total degree first, then exponents
/// left to right (earlier ring variables weigh more).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    unsigned da = 0, db = 0;
    for (unsigned e : a) da += e;
    for (unsigned e : b) db += e;
    if (da != db) return da < db;
    return a < b;  // lexicographic tie-break
  }
};

/// Sparse multivariate polynomial over Rational.  Invariants: no stored zero
/// coefficients; every exponent vector has length |ring|.
class MPoly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexLess>;

  explicit MPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MPoly zero(RingPtr ring) { return MPoly(std::move(ring)); }
  static MPoly constant(RingPtr ring, const Rational& c);
  static MPoly variable(RingPtr ring, std::size_t var);
  static MPoly variable(RingPtr ring, std::string_view name);
  static MPoly term(RingPtr ring, Monomial m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Requires is_constant(); zero polynomial yields 0.
  Rational constant_value() const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  /// Leading term under graded-lex order.  Requires nonzero.
  const std::pair<const Monomial, Rational>& leading() const;
  Rational coeff(const Monomial& m) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { a += b; return a; }
  friend MPoly operator-(MPoly a, const MPoly& b) { a -= b; return a; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

  MPoly scaled(const Rational& c) const;
  MPoly pow(unsigned e) const;
  MPoly derivative(std::size_t var) const;

  /// Substitutes `value` for the given variable (Horner in that variable).
  MPoly substitute(std::size_t var, const MPoly& value) const;
  MPoly substitute(std::size_t var, const Rational& value) const;

  /// Full evaluation; `point[i]` is the value of ring variable i.
  Rational eval(const std::vector<Rational>& point) const;

  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  /// Signed rational content: p = content() * primitive_part(), where the
  /// primitive part has coprime integer coefficients and positive leading
  /// coefficient.  content(0) = 0.
  Rational content() const;
  MPoly primitive_part() const;

  /// Exact division; nullopt when the division leaves a remainder.
  std::optional<MPoly> divide_exact(const MPoly& divisor) const;

  /// Multivariate GCD (content extraction + primitive-part recursion on the
  /// main variable, subresultant PRS below).  Result is sign-normalized with
  /// rational content gcd(content(a), content(b)); gcd(p, 0) = sign-normalized p.
  static MPoly gcd(const MPoly& a, const MPoly& b);

  /// lcm(a,b) = a*b / gcd(a,b), sign-normalized; lcm with zero is zero.
  static MPoly lcm(const MPoly& a, const MPoly& b);

  /// Dense coefficient list in `var` (index = power); coefficients keep the
  /// full ring with a zero exponent at `var`.
  std::vector<MPoly> coeffs_in(std::size_t var) const;
  static MPoly from_coeffs_in(RingPtr ring, std::size_t var, const std::vector<MPoly>& coeffs);

  /// Deterministic plain rendering, graded-lex descending, e.g. "2*x^2*n - 1/2".
  std::string str() const;

 private:
  void insert_term(const Monomial& m, const Rational& c);

  RingPtr ring_;
  TermMap terms_;
};

}  // namespace lh

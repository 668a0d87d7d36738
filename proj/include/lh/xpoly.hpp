#pragma once

#include <vector>

#include "lh/ratfun.hpp"

namespace lh {

/// Polynomial in the main variable x with RatFun coefficients that do not
/// depend on x.  The ring is the full indeterminate ring {x, n, params...};
/// x is located by name.  Invariant: the stored coefficient list is empty
/// (zero polynomial) or ends with a nonzero leading coefficient.
class XPoly {
 public:
  explicit XPoly(RingPtr ring);
  XPoly(RingPtr ring, std::vector<RatFun> coeffs);

  static XPoly zero(RingPtr ring) { return XPoly(std::move(ring)); }
  static XPoly constant(RingPtr ring, const Rational& c);
  static XPoly constant(const RatFun& c);
  static XPoly x(RingPtr ring);
  /// Splits an x-polynomial MPoly (or RatFun with x-free denominator) into
  /// XPoly form.  Throws DivisibilityError when the denominator involves x.
  static XPoly from_mpoly(const MPoly& p);
  static XPoly from_ratfun(const RatFun& r);

  const RingPtr& ring() const { return ring_; }
  std::size_t xvar() const { return xvar_; }
  /// Degree in x; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^i (zero RatFun beyond the degree).
  RatFun coeff(std::size_t i) const;
  const RatFun& leading() const;
  const std::vector<RatFun>& coeffs() const { return coeffs_; }

  XPoly operator-() const;
  friend XPoly operator+(const XPoly& a, const XPoly& b);
  friend XPoly operator-(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  XPoly& operator+=(const XPoly& o) { *this = *this + o; return *this; }
  XPoly& operator-=(const XPoly& o) { *this = *this - o; return *this; }
  XPoly& operator*=(const XPoly& o) { *this = *this * o; return *this; }

  XPoly scaled(const RatFun& r) const;
  XPoly scaled(const Rational& r) const;
  XPoly pow(unsigned e) const;

  /// Formal derivative with respect to x only.
  XPoly d_dx() const;

  /// Value p(c) for an x-free point c.
  RatFun eval_at(const RatFun& c) const;

  /// Divided difference (p(x) - p(c)) / (x - c), exact synthetic division.
  XPoly theta_c(const RatFun& c) const;

  /// Composition x -> a*x + b (a nonzero; throws InvalidAffineError).
  XPoly subst_affine(const RatFun& a, const RatFun& b) const;

  /// Index shift n -> n + k applied to every coefficient.
  XPoly shift_index(long k) const;

  /// Index substitution n -> mult*n + off applied to every coefficient.
  XPoly subst_index(long mult, long off) const;

  /// Substitutes a concrete value for a non-x ring variable in every
  /// coefficient (used to instantiate branch forms at fixed indices).
  XPoly substitute(std::size_t var, const Rational& value) const;

  /// Exact quotient; throws DivisibilityError (carrying the remainder) when
  /// the division is not exact, ZeroDenominatorError when divisor is zero.
  XPoly divide_exact(const XPoly& divisor) const;

  /// Clears denominators: returns (N, d) with d an x-free primitive MPoly of
  /// positive leading coefficient and N = d * this flattened to an MPoly.
  std::pair<MPoly, MPoly> cleared() const;

  friend bool operator==(const XPoly& a, const XPoly& b);
  friend bool operator!=(const XPoly& a, const XPoly& b) { return !(a == b); }

  std::string str() const;

 private:
  void trim();
  void check_coeff(const RatFun& c) const;

  RingPtr ring_;
  std::size_t xvar_;
  std::vector<RatFun> coeffs_;
};

}  // namespace lh

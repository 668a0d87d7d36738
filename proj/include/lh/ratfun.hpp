#pragma once

#include <string>

#include "lh/mpoly.hpp"

namespace lh {

/// Normalized quotient of two MPoly.  Canonical form: gcd(num, den) is a
/// unit and den is integer-primitive with positive leading coefficient under
/// graded-lex order, so equality is literal equality of the parts.
class RatFun {
 public:
  explicit RatFun(RingPtr ring)
      : num_(MPoly::zero(ring)), den_(MPoly::constant(std::move(ring), 1)) {}
  RatFun(MPoly num, MPoly den);
  explicit RatFun(MPoly num);

  static RatFun constant(RingPtr ring, const Rational& c) {
    return RatFun(MPoly::constant(std::move(ring), c));
  }
  static RatFun variable(RingPtr ring, std::string_view name) {
    return RatFun(MPoly::variable(std::move(ring), name));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool depends_on(std::size_t var) const {
    return num_.depends_on(var) || den_.depends_on(var);
  }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { *this = *this + o; return *this; }
  RatFun& operator-=(const RatFun& o) { *this = *this - o; return *this; }
  RatFun& operator*=(const RatFun& o) { *this = *this * o; return *this; }
  RatFun& operator/=(const RatFun& o) { *this = *this / o; return *this; }

  RatFun inverse() const;
  RatFun pow(int e) const;
  RatFun derivative(std::size_t var) const;
  RatFun substitute(std::size_t var, const RatFun& value) const;
  RatFun substitute(std::size_t var, const Rational& value) const;

  /// Full evaluation; throws ZeroDenominatorError when den vanishes.
  Rational eval(const std::vector<Rational>& point) const;

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  std::string str() const;

 private:
  void normalize();

  MPoly num_, den_;
};

}  // namespace lh

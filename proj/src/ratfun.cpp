#include "lh/ratfun.hpp"

#include "lh/errors.hpp"

namespace lh {

RatFun::RatFun(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_ring(num_.ring(), den_.ring(), "RatFun construction");
  if (den_.is_zero()) throw ZeroDenominatorError("RatFun with zero denominator");
  normalize();
}

RatFun::RatFun(MPoly num)
    : num_(std::move(num)), den_(MPoly::constant(num_.ring(), 1)) {}

void RatFun::normalize() {
  if (num_.is_zero()) {
    den_ = MPoly::constant(num_.ring(), 1);
    return;
  }
  MPoly g = MPoly::gcd(num_, den_);
  num_ = *num_.divide_exact(g);
  den_ = *den_.divide_exact(g);
  // Scale so den is integer-primitive with positive leading coefficient.
  Rational c = den_.content();
  if (!c.is_one()) {
    Rational inv = c.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFun RatFun::operator-() const {
  RatFun r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw ZeroDenominatorError("RatFun division by zero");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw ZeroDenominatorError("inverse of zero RatFun");
  return RatFun(den_, num_);
}

RatFun RatFun::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFun acc = RatFun::constant(ring(), 1);
  RatFun base = *this;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

RatFun RatFun::derivative(std::size_t var) const {
  return RatFun(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RatFun RatFun::substitute(std::size_t var, const RatFun& value) const {
  // num and den are substituted independently; value must be polynomial-free
  // substitution is handled by composing through the quotient.
  RatFun acc = RatFun::constant(ring(), 0);
  std::vector<MPoly> ncs = num_.coeffs_in(var);
  for (auto it = ncs.rbegin(); it != ncs.rend(); ++it) acc = acc * value + RatFun(*it);
  RatFun accd = RatFun::constant(ring(), 0);
  std::vector<MPoly> dcs = den_.coeffs_in(var);
  for (auto it = dcs.rbegin(); it != dcs.rend(); ++it) accd = accd * value + RatFun(*it);
  return acc / accd;
}

RatFun RatFun::substitute(std::size_t var, const Rational& value) const {
  MPoly n = num_.substitute(var, value);
  MPoly d = den_.substitute(var, value);
  if (d.is_zero()) throw ZeroDenominatorError("RatFun substitution hits a pole");
  return RatFun(std::move(n), std::move(d));
}

Rational RatFun::eval(const std::vector<Rational>& point) const {
  Rational d = den_.eval(point);
  if (d.is_zero()) throw ZeroDenominatorError("RatFun evaluation hits a pole");
  return num_.eval(point) / d;
}

std::string RatFun::str() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace lh

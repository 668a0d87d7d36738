#include "lh/xpoly.hpp"

#include <sstream>

#include "lh/errors.hpp"

namespace lh {

namespace {
std::size_t find_x(const RingPtr& ring) {
  auto idx = ring->index_of("x");
  if (!idx) throw RingMismatchError("ring does not declare the main variable x");
  return *idx;
}
}  // namespace

XPoly::XPoly(RingPtr ring) : ring_(std::move(ring)), xvar_(find_x(ring_)) {}

XPoly::XPoly(RingPtr ring, std::vector<RatFun> coeffs)
    : ring_(std::move(ring)), xvar_(find_x(ring_)), coeffs_(std::move(coeffs)) {
  for (const RatFun& c : coeffs_) check_coeff(c);
  trim();
}

void XPoly::check_coeff(const RatFun& c) const {
  require_same_ring(ring_, c.ring(), "XPoly coefficient");
  if (c.depends_on(xvar_))
    throw RingMismatchError("XPoly coefficient depends on x");
}

void XPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

XPoly XPoly::constant(RingPtr ring, const Rational& c) {
  return constant(RatFun::constant(std::move(ring), c));
}

XPoly XPoly::constant(const RatFun& c) {
  XPoly p(c.ring());
  p.check_coeff(c);
  if (!c.is_zero()) p.coeffs_.push_back(c);
  return p;
}

XPoly XPoly::x(RingPtr ring) {
  XPoly p(ring);
  p.coeffs_.push_back(RatFun::constant(ring, 0));
  p.coeffs_.push_back(RatFun::constant(std::move(ring), 1));
  return p;
}

XPoly XPoly::from_mpoly(const MPoly& p) {
  XPoly r(p.ring());
  for (const MPoly& c : p.coeffs_in(r.xvar_)) r.coeffs_.push_back(RatFun(c));
  r.trim();
  for (const RatFun& c : r.coeffs_) r.check_coeff(c);
  return r;
}

XPoly XPoly::from_ratfun(const RatFun& r) {
  XPoly p(r.ring());
  if (r.den().depends_on(p.xvar_))
    throw DivisibilityError("denominator depends on x: " + r.den().str());
  RatFun dinv = RatFun(r.den()).inverse();
  for (const MPoly& c : r.num().coeffs_in(p.xvar_))
    p.coeffs_.push_back(RatFun(c) * dinv);
  p.trim();
  return p;
}

RatFun XPoly::coeff(std::size_t i) const {
  if (i < coeffs_.size()) return coeffs_[i];
  return RatFun::constant(ring_, 0);
}

const RatFun& XPoly::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of zero XPoly");
  return coeffs_.back();
}

XPoly XPoly::operator-() const {
  XPoly r = *this;
  for (RatFun& c : r.coeffs_) c = -c;
  return r;
}

XPoly operator+(const XPoly& a, const XPoly& b) {
  require_same_ring(a.ring_, b.ring_, "XPoly addition");
  XPoly r = a;
  if (r.coeffs_.size() < b.coeffs_.size())
    r.coeffs_.resize(b.coeffs_.size(), RatFun::constant(a.ring_, 0));
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
  r.trim();
  return r;
}

XPoly operator-(const XPoly& a, const XPoly& b) { return a + (-b); }

XPoly operator*(const XPoly& a, const XPoly& b) {
  require_same_ring(a.ring_, b.ring_, "XPoly multiplication");
  XPoly r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, RatFun::constant(a.ring_, 0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  r.trim();
  return r;
}

XPoly XPoly::scaled(const RatFun& r) const {
  check_coeff(r);
  XPoly p(ring_);
  if (r.is_zero()) return p;
  p.coeffs_ = coeffs_;
  for (RatFun& c : p.coeffs_) c *= r;
  return p;
}

XPoly XPoly::scaled(const Rational& r) const {
  return scaled(RatFun::constant(ring_, r));
}

XPoly XPoly::pow(unsigned e) const {
  XPoly acc = constant(ring_, 1);
  XPoly base = *this;
  while (e > 0) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1u;
  }
  return acc;
}

XPoly XPoly::d_dx() const {
  XPoly r(ring_);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_.push_back(coeffs_[i] * RatFun::constant(ring_, Rational(static_cast<long>(i))));
  r.trim();
  return r;
}

RatFun XPoly::eval_at(const RatFun& c) const {
  check_coeff(c);
  RatFun acc = RatFun::constant(ring_, 0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * c + *it;
  return acc;
}

XPoly XPoly::theta_c(const RatFun& c) const {
  check_coeff(c);
  XPoly q(ring_);
  if (degree() < 1) return q;  // constants (and zero) divide out to 0
  q.coeffs_.assign(coeffs_.size() - 1, RatFun::constant(ring_, 0));
  RatFun carry = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    q.coeffs_[i] = carry;
    carry = coeffs_[i] + c * carry;  // synthetic division; carry ends as p(c)
  }
  q.trim();
  return q;
}

XPoly XPoly::subst_affine(const RatFun& a, const RatFun& b) const {
  if (a.is_zero()) throw InvalidAffineError("affine substitution with a = 0");
  check_coeff(a);
  check_coeff(b);
  XPoly img = x(ring_).scaled(a) + constant(b);
  XPoly acc(ring_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * img + constant(*it);
  return acc;
}

XPoly XPoly::shift_index(long k) const { return subst_index(1, k); }

XPoly XPoly::subst_index(long mult, long off) const {
  auto n = ring_->index_of("n");
  if (!n) throw RingMismatchError("ring does not declare the index variable n");
  if (mult == 1 && off == 0) return *this;
  RatFun image = RatFun::variable(ring_, "n") * RatFun::constant(ring_, Rational(mult)) +
                 RatFun::constant(ring_, Rational(off));
  XPoly r(ring_);
  r.coeffs_ = coeffs_;
  for (RatFun& c : r.coeffs_) c = c.substitute(*n, image);
  r.trim();
  return r;
}

XPoly XPoly::substitute(std::size_t var, const Rational& value) const {
  if (var == xvar_) throw RingMismatchError("cannot substitute the main variable of an XPoly");
  XPoly r(ring_);
  r.coeffs_ = coeffs_;
  for (RatFun& c : r.coeffs_) c = c.substitute(var, value);
  r.trim();
  return r;
}

XPoly XPoly::divide_exact(const XPoly& divisor) const {
  require_same_ring(ring_, divisor.ring_, "XPoly division");
  if (divisor.is_zero()) throw ZeroDenominatorError("XPoly division by zero");
  XPoly q(ring_), r = *this;
  RatFun lead_inv = divisor.leading().inverse();
  int dq = degree() - divisor.degree();
  if (r.is_zero()) return q;
  if (dq < 0)
    throw DivisibilityError("non-exact XPoly division, remainder " + r.str());
  q.coeffs_.assign(static_cast<std::size_t>(dq) + 1, RatFun::constant(ring_, 0));
  while (!r.is_zero() && r.degree() >= divisor.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - divisor.degree());
    RatFun qc = r.leading() * lead_inv;
    q.coeffs_[shift] = qc;
    XPoly sub(ring_);
    sub.coeffs_.assign(shift, RatFun::constant(ring_, 0));
    sub.coeffs_.push_back(qc);
    r -= sub * divisor;
  }
  if (!r.is_zero())
    throw DivisibilityError("non-exact XPoly division, remainder " + r.str());
  q.trim();
  return q;
}

std::pair<MPoly, MPoly> XPoly::cleared() const {
  MPoly den = MPoly::constant(ring_, 1);
  for (const RatFun& c : coeffs_) den = MPoly::lcm(den, c.den());
  den = den.primitive_part();
  MPoly num = MPoly::zero(ring_);
  MPoly xm = MPoly::variable(ring_, xvar_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    MPoly scale = *den.divide_exact(coeffs_[i].den());
    num = num * xm + coeffs_[i].num() * scale;
  }
  return {num, den};
}

bool operator==(const XPoly& a, const XPoly& b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

std::string XPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[i].str() << ")";
    if (i == 1) os << "*x";
    if (i > 1) os << "*x^" << i;
  }
  return os.str();
}

}  // namespace lh

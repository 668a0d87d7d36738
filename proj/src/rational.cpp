#include "lh/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "lh/errors.hpp"

namespace lh {

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw ZeroDenominatorError("rational with zero denominator");
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (den == 0) throw ZeroDenominatorError("rational with zero denominator");
  v_.canonicalize();
}

std::optional<Rational> Rational::parse(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string text(s);
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n;
      if (n.set_str(text, 10) != 0) return std::nullopt;
      return Rational(n);
    }
    mpz_class n, d;
    if (n.set_str(text.substr(0, slash), 10) != 0) return std::nullopt;
    if (d.set_str(text.substr(slash + 1), 10) != 0) return std::nullopt;
    if (d == 0) return std::nullopt;
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ZeroDenominatorError("division of rational by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw ZeroDenominatorError("inverse of zero rational");
  return Rational(den(), num());
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Rational base = *this;
  Rational acc = 1;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Rational Rational::gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
  mpz_lcm(l.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
  return Rational(g, l);
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace lh

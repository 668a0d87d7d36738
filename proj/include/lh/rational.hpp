#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace lh {

/// Arbitrary-precision rational number in canonical form:
/// gcd(|numerator|, denominator) = 1, denominator >= 1, zero stored as 0/1.
/// Backed by GMP's mpq; every constructor canonicalizes.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}        // NOLINT: implicit for integer literals
  Rational(long n) : v_(n) {}       // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);

  /// Parses "p" or "p/q" with optional leading '-'.  Returns nullopt on
  /// malformed input or zero denominator.
  static std::optional<Rational> parse(std::string_view s);

  const mpz_class num() const { return v_.get_num(); }
  const mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(long e) const;

  /// gcd(a/b, c/d) = gcd(a, c) / lcm(b, d); nonnegative, gcd(x, 0) = |x|.
  static Rational gcd(const Rational& a, const Rational& b);

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

}  // namespace lh

#include "doctest.h"
#include "lh/errors.hpp"
#include "lh/rational.hpp"

using lh::Rational;

TEST_CASE("canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0).den() == 1);
  CHECK(Rational(6, 3).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), lh::ZeroDenominatorError);
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(3, 5) == Rational(-3, 5));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK_THROWS_AS(Rational(1) / Rational(0), lh::ZeroDenominatorError);
}

TEST_CASE("gcd convention") {
  CHECK(Rational::gcd(Rational(4), Rational(6)) == Rational(2));
  CHECK(Rational::gcd(Rational(4), Rational(4)) == Rational(4));
  CHECK(Rational::gcd(Rational(1, 2), Rational(1, 3)) == Rational(1, 6));
  CHECK(Rational::gcd(Rational(-4), Rational(0)) == Rational(4));
  CHECK(Rational::gcd(Rational(3, 2), Rational(3)) == Rational(3, 2));
}

TEST_CASE("parse") {
  CHECK(*Rational::parse("3/4") == Rational(3, 4));
  CHECK(*Rational::parse("-7") == Rational(-7));
  CHECK(*Rational::parse("-2/6") == Rational(-1, 3));
  CHECK(!Rational::parse("1/0"));
  CHECK(!Rational::parse("x"));
  CHECK(!Rational::parse(""));
  CHECK(Rational(-1, 3).str() == "-1/3");
}

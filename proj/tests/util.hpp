#pragma once

#include <random>
#include <string>

#include "lh/expr.hpp"
#include "lh/family.hpp"

namespace lh::test {

inline std::string data_dir() { return LH_DATA_DIR; }

inline std::string family_path(const std::string& name) {
  return data_dir() + "/families/" + name + ".json";
}

/// Deterministic small-instance generators for the property suites.
struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long pick(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
  }

  Rational rational() {
    long den = pick(1, 6);
    return Rational(pick(-9, 9), den);
  }

  Rational nonzero_rational() {
    Rational r = rational();
    return r.is_zero() ? Rational(1, pick(1, 6)) : r;
  }

  MPoly mpoly(const RingPtr& ring, int max_terms = 4, unsigned max_exp = 3) {
    MPoly p = MPoly::zero(ring);
    int terms = static_cast<int>(pick(0, max_terms));
    for (int t = 0; t < terms; ++t) {
      Monomial m(ring->size(), 0);
      for (std::size_t v = 0; v < ring->size(); ++v)
        m[v] = static_cast<unsigned>(pick(0, max_exp));
      p += MPoly::term(ring, m, rational());
    }
    return p;
  }

  MPoly nonzero_mpoly(const RingPtr& ring, int max_terms = 4, unsigned max_exp = 3) {
    for (int tries = 0; tries < 64; ++tries) {
      MPoly p = mpoly(ring, max_terms, max_exp);
      if (!p.is_zero()) return p;
    }
    return MPoly::constant(ring, 1);
  }

  /// Random XPoly whose coefficients are rational functions of the non-x vars.
  XPoly xpoly(const RingPtr& ring, int max_deg = 3, bool rational_coeffs = false) {
    std::size_t xv = *ring->index_of("x");
    int deg = static_cast<int>(pick(0, max_deg));
    std::vector<RatFun> cs;
    for (int i = 0; i <= deg; ++i) {
      MPoly num = mpoly(ring, 3, 2);
      // force x-freedom
      MPoly flat = MPoly::zero(ring);
      for (const auto& [m, c] : num.terms()) {
        Monomial mm = m;
        mm[xv] = 0;
        flat += MPoly::term(ring, mm, c);
      }
      if (rational_coeffs) {
        MPoly den = nonzero_mpoly(ring, 2, 1);
        MPoly dflat = MPoly::zero(ring);
        for (const auto& [m, c] : den.terms()) {
          Monomial mm = m;
          mm[xv] = 0;
          dflat += MPoly::term(ring, mm, c);
        }
        if (dflat.is_zero()) dflat = MPoly::constant(ring, 1);
        cs.push_back(RatFun(flat, dflat));
      } else {
        cs.push_back(RatFun(flat));
      }
    }
    return XPoly(ring, cs);
  }
};

}  // namespace lh::test

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lh/derivation.hpp"
#include "lh/family.hpp"
#include "lh/reduction.hpp"

namespace lh {

/// Concrete parameter values plus the index range a verification runs over.
/// Construction validates that every gamma_n, 1 <= n <= n_max + 2, evaluates
/// to a nonzero rational (regularity at working scale).
struct NumericContext {
  std::map<std::string, Rational> assignment;
  int n_max = 8;
};

/// Dense polynomial in x over Rational (the oracle's computation carrier).
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c);
  static QPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const;
  bool is_monic() const { return !is_zero() && leading().is_one(); }

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly& operator+=(const QPoly& o) { *this = *this + o; return *this; }
  QPoly& operator-=(const QPoly& o) { *this = *this - o; return *this; }
  QPoly scaled(const Rational& r) const;
  QPoly derivative() const;
  Rational eval(const Rational& v) const;

  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;  // c_[i] multiplies x^i; trailing zeros trimmed
};

/// Monic TTRR: P_0 = 1, P_1 = x - beta[0],
/// P_{n+2} = (x - beta[n+1]) P_{n+1} - gamma[n+1] P_n.  Returns P_0..P_{n_max};
/// beta[i] = beta_i (size > n_max - 1), gamma[i] = gamma_i (gamma[0] unused).
std::vector<QPoly> ttrr(const std::vector<Rational>& beta, const std::vector<Rational>& gamma,
                        int n_max);

/// Associated sequence of order one: the TTRR with beta^(1)_n = beta_{n+1},
/// gamma^(1)_n = gamma_{n+1}.
std::vector<QPoly> associated1(const std::vector<Rational>& beta,
                               const std::vector<Rational>& gamma, int n_max);

struct CheckItem {
  std::string relation;
  long n = 0;
  bool zero = false;
  int residual_degree = -1;  // -1 for a zero residual
};

struct CheckReport {
  std::vector<CheckItem> items;
  std::vector<std::string> notes;
  bool all_zero() const;
  std::string summary() const;
  std::string to_json() const;
  void append(const CheckReport& o);
};

/// Everything the per-family checks need, computed once per context: numeric
/// recurrence coefficients, P_n / P^(1)_n witnesses, and the C_n / D_n
/// iterates of the coefficient recurrences (with D_{-1} = B, gamma_0 = 1).
class OracleSession {
 public:
  OracleSession(const LHFamily& f, const NumericContext& ctx);

  const LHFamily& family() const { return *f_; }
  const NumericContext& context() const { return ctx_; }
  const std::vector<QPoly>& P() const { return P_; }
  const std::vector<QPoly>& P1() const { return P1_; }
  /// C_0..C_{n_max+1}.
  const std::vector<QPoly>& C_seq() const { return C_; }
  /// D at index i is D_{i-1} (so D_seq()[0] = D_{-1} = B).
  const std::vector<QPoly>& D_seq() const { return D_; }
  Rational beta_at(long n) const;
  Rational gamma_at(long n) const;  // gamma_0 = 1 by the D_{-1} = B convention

  /// Instantiates branch-form coefficients at a concrete sequence index.
  QPoly instantiate(const XPoly& p, const Branch& branch, long n) const;

  /// Compares every C_n / D_n iterate against the family's declared closed
  /// forms (seq_at); mismatches are reported findings, not exceptions.
  CheckReport iterate_agreement() const;

  /// Residuals of R1-R4 and S1-S4 for every n <= n_max; the S-relation
  /// coefficients are rebuilt numerically from the iterated C_n / D_n.
  CheckReport check_relations() const;

  /// Exact annihilation of P_{n+1} by a derived equation for every covered
  /// n <= n_max.  Degenerate equations must evaluate to all-zero coefficients.
  CheckReport check_ode(const OdeResult& ode) const;
  CheckReport check_ode(const ReducedOde& red) const;

  /// Summation identity, completed for strict Laguerre-Hahn input:
  /// gamma_{n+1} D_n D_{n+1} - (C_{n+1}^2 - C_0^2)/4 + phi sum_{v<=n} D_v
  ///   - B D_0 = 0.  The B D_0 term vanishes in the semiclassical case.
  CheckReport check_rsimp() const;

 private:
  QPoly eval_xpoly(const XPoly& p, long n_value) const;

  const LHFamily* f_;
  NumericContext ctx_;
  std::vector<Rational> beta_, gamma_;  // beta_[i] = beta_i, gamma_[i] = gamma_i (gamma_[0] = 1)
  std::vector<QPoly> P_, P1_, C_, D_;
  QPoly phi_, B_, C0_, D0_;
};

/// Convenience wrappers matching the step structure of the verification
/// pipeline.
CheckReport check_relations(const LHFamily& f, const NumericContext& ctx);
CheckReport check_ode(const LHFamily& f, const NumericContext& ctx, const OdeResult& ode);
CheckReport check_ode(const LHFamily& f, const NumericContext& ctx, const ReducedOde& red);
CheckReport check_rsimp(const LHFamily& f, const NumericContext& ctx);

/// Assignment = family defaults overridden by `overrides`; throws ConfigError
/// when a parameter ends up unassigned or gamma vanishes in working range.
NumericContext make_context(const LHFamily& f,
                            const std::map<std::string, Rational>& overrides, int n_max);

}  // namespace lh

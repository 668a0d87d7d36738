#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lh/xpoly.hpp"

namespace lh {

struct SeqBranch {
  int residue = 0;
  int modulus = 1;
  long min_index = 0;
  XPoly body;  // closed form in the quotient symbol n: index m*k + residue -> body(n := k)
};

/// Piecewise closed-form sequence over an integer index: explicit exceptional
/// entries plus residue-class branches covering all larger indices.  Every
/// index >= domain_start is matched by exactly one exceptional entry or one
/// branch.
class ParamSeq {
 public:
  ParamSeq(long domain_start, std::map<long, XPoly> exceptional,
           std::vector<SeqBranch> branches);

  long domain_start() const { return domain_start_; }
  int modulus() const { return branches_.front().modulus; }
  const std::map<long, XPoly>& exceptional() const { return exceptional_; }
  const std::vector<SeqBranch>& branches() const { return branches_; }
  const RingPtr& ring() const { return branches_.front().body.ring(); }

  bool is_exceptional(long idx) const { return exceptional_.count(idx) != 0; }

  /// Exact value at a concrete index (substitutes the quotient).
  XPoly at(long idx) const;

  struct ClosedForm {
    XPoly form;  // XPoly in the quotient symbol n
    long min_n;  // valid for n >= min_n
  };

  /// Closed form of index modulus*n + residue + shift, as an XPoly in n.
  ClosedForm branch_form(int residue, long shift) const;

  /// Closed form of index M*n + residue + shift for a caller-chosen modulus M
  /// (the sequence's own modulus must divide M).
  ClosedForm class_form(int big_modulus, int residue, long shift) const;

  /// Index shift: result[i] = (*this)[i + r], same domain start.
  ParamSeq shifted(long r) const;

  /// Replaces/installs exceptional entries and pushes branch starts past them.
  ParamSeq with_exceptional(std::map<long, XPoly> entries) const;

 private:
  void validate() const;

  long domain_start_;
  std::map<long, XPoly> exceptional_;
  std::vector<SeqBranch> branches_;
};

/// Complete defining data of a Laguerre-Hahn family: Riccati coefficients
/// (phi, B, C, D), recurrence coefficients (beta, gamma), and the closed
/// forms of the structure-relation coefficients C_n (n>=1) and D_n (n>=1).
/// C_0, D_0 are the scalar fields; D_{-1} = B by convention.
struct LHFamily {
  std::string name;
  std::vector<std::string> params;
  RingPtr ring;  // {x, n} + params
  XPoly phi, B, C, D;
  ParamSeq beta;   // beta_n, n >= 0 (x-free values)
  ParamSeq gamma;  // gamma_n, n >= 1 (x-free, nonzero under assignments)
  ParamSeq Cseq;   // C_n, n >= 1
  ParamSeq Dseq;   // D_n, n >= 1
  std::map<std::string, Rational> assignments;
  std::string regularity_notes;
  bool sequences_stale = false;  // set by affine_shift_family

  std::size_t nvar() const { return *ring->index_of("n"); }
  std::size_t xvar() const { return *ring->index_of("x"); }
  bool is_semiclassical() const { return B.is_zero(); }
  /// lcm of the four sequences' branch moduli; derivations split on it.
  int derivation_modulus() const;
};

/// Loads a family from its JSON document (see the file schema in the README);
/// throws SchemaError / ParseError on invalid input.
LHFamily load_family(const std::string& json_text);
LHFamily load_family_file(const std::string& path);

/// psi = -phi' - C.
XPoly psi_of(const LHFamily& f);

struct ClassReport {
  int deg_phi = 0;
  std::optional<int> deg_psi;  // nullopt encodes deg 0 = -infinity
  std::optional<int> deg_B;
  int s = 0;  // max(deg psi - 1, max(deg phi, deg B) - 2)
};

ClassReport class_degrees(const LHFamily& f);

/// Shifted family: phi~(x) = a^{-deg phi} phi(ax+b), psi~ = a^{1-deg phi}
/// psi(ax+b), B~ = a^{-deg phi} B(ax+b), C~ = -phi~' - psi~.  Sequence data
/// and D are not transformed and the result is flagged stale.
LHFamily affine_shift_family(const LHFamily& f, const Rational& a, const Rational& b);

/// Perturbation of order r: beta~_0 = beta_0 + mu0; beta~_n = beta_n + mu[n-1]
/// and gamma~_n = lambda[n-1] * gamma_n for 1 <= n <= r; unchanged beyond.
std::pair<ParamSeq, ParamSeq> perturb_recurrence(const ParamSeq& beta, const ParamSeq& gamma,
                                                 const RatFun& mu0,
                                                 const std::vector<RatFun>& mu,
                                                 const std::vector<RatFun>& lambda, int r);

/// Associated sequences of order r: beta^(r)_n = beta_{n+r}, gamma^(r)_n = gamma_{n+r}.
std::pair<ParamSeq, ParamSeq> associated_shift(const ParamSeq& beta, const ParamSeq& gamma, int r);

struct SrRow {
  std::string where;     // "branch 2n", "index 0", ...
  std::string relation;  // "SR-1" or "SR-2"
  bool zero = false;
  std::string residual;  // rendering of a nonzero residual, "0" otherwise
};

struct SrReport {
  std::vector<SrRow> rows;
  bool all_zero() const;
};

/// Symbolically checks the coefficient recurrences
///   C_{n+1} = -C_n + 2(x - beta_n) D_n
///   gamma_{n+1} D_{n+1} = -phi + gamma_n D_{n-1} - (x - beta_n) C_n + (x - beta_n)^2 D_n
/// on every residue branch and every exceptional boundary index, with
/// C_0 = C, D_0 = D, D_{-1} = B and gamma_0 = 1 (the n = 0 instance forced by
/// the D_{-1} = B initial condition).
SrReport verify_sr_recurrences(const LHFamily& f);

}  // namespace lh

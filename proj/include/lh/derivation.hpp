#pragma once

#include <array>

#include "lh/family.hpp"

namespace lh {

/// Sub-sequence of sequence indices a derivation is valid on.
/// modulus >= 1: indices n = modulus*t + residue with n >= min_index, and
/// outputs are XPoly in the branch symbol n (standing for the quotient t).
/// modulus == 0: a concrete instance; residue holds the index and outputs
/// carry no n dependence.
struct Branch {
  int residue = 0;
  int modulus = 1;
  long min_index = 0;

  bool concrete() const { return modulus == 0; }
  bool covers(long n) const {
    if (concrete()) return n == residue;
    return n >= min_index && ((n - residue) % modulus) == 0;
  }
  /// Branch symbol value for a covered sequence index.
  long local(long n) const { return concrete() ? 0 : (n - residue) / modulus; }
  std::string label() const;
};

/// One of the four structure relations
///   G0 P^(1)_{n-1} + G1 P^(1)_n + H P_n
///     = phi^k P^(k)_{n+1} + sum_j M[j] P^(j)_{n+1},   k = level.
/// The coefficient phi^k is stored unreduced; level-1 G0 is identically 0.
struct StructureRelation {
  int level = 1;
  XPoly G0, G1, H;
  std::vector<XPoly> M;  // M[j] multiplies P^(j)_{n+1}, j = 0..level-1
  XPoly phi_power;       // phi^level
};

struct OdeResult {
  int order = 4;
  std::vector<XPoly> coeffs;  // highest derivative first, size order+1
  Branch branch;
  bool degenerate = false;    // all coefficients identically zero
};

/// Generic derivation branches of a family (one per residue class of the
/// derivation modulus) plus the low indices that need concrete instances.
std::vector<Branch> derivation_branches(const LHFamily& f);
std::vector<long> exceptional_indices(const LHFamily& f);

/// Builds the four structure relations on a branch, strictly by the
/// level-raising recursion (differentiate, multiply by phi, eliminate).
std::array<StructureRelation, 4> build_relations(const LHFamily& f, const Branch& branch);

/// Fourth-order equation of a strict Laguerre-Hahn family, by 3x3 determinant
/// elimination of P^(1)_{n-1}, P^(1)_n, P_n from the four relations.
/// Degenerate (all-zero) exactly when B == 0.
OdeResult build_ode4(const std::array<StructureRelation, 4>& rels, const LHFamily& f,
                     const Branch& branch);

enum class ScForm { I, II };

/// Second-order equation of a semiclassical family (B == 0).  Form I comes
/// from eliminating P_n between relations 1 and 2; form II is its compact
/// rewriting (form I = -gamma_{n+1} * form II componentwise).
OdeResult build_semiclassical_ode2(const LHFamily& f, const Branch& branch, ScForm form);

/// Third- or fourth-order equation of a semiclassical family from relations
/// (1,3) and (1,4) respectively.
OdeResult build_semiclassical_ode34(const LHFamily& f, const Branch& branch, int order);

/// sum_{v=0}^{n} D_v = -[gamma_{n+1} D_n D_{n+1} - (C_{n+1}^2 - C_0^2)/4] / phi,
/// exact by the summation identity when the SR recurrences hold.
XPoly sum_D_via_identity(const LHFamily& f, const Branch& branch);

/// Wronskian form of the semiclassical second-order equation:
/// J = phi D_{n+1}; K = C_0 D_{n+1} - W(phi, D_{n+1});
/// L = W((C_{n+1}-C_0)/2, D_{n+1}) - D_{n+1} sum D_v, with W(f,g) = f g' - f' g.
OdeResult build_wronskian_form(const LHFamily& f, const Branch& branch);

/// Bochner form for classical data (B == 0, deg phi <= 2, deg psi = 1,
/// D_{n+1} constant in x): (phi, phi' + C_0, -[sum D_v + (C_{n+1}-C_0)'/2]).
OdeResult build_classical_ode(const LHFamily& f, const Branch& branch);

}  // namespace lh

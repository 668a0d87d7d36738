#include "lh/derivation.hpp"

#include <algorithm>

#include "lh/errors.hpp"

namespace lh {

std::string Branch::label() const {
  if (concrete()) return "index " + std::to_string(residue);
  if (modulus == 1) return "branch n";
  if (residue == 0) return "branch " + std::to_string(modulus) + "n";
  return "branch " + std::to_string(modulus) + "n+" + std::to_string(residue);
}

namespace {

/// Branch instances of the n-indexed inputs of the structure relations.
struct Inputs {
  RatFun gamma_n1;
  XPoly C_n1, D_n1, D_n;
};

Inputs branch_inputs(const LHFamily& f, const Branch& br, long* min_index_out) {
  if (br.concrete()) {
    const long n = br.residue;
    if (n < 0) throw SequenceDomainError("negative sequence index");
    XPoly g = f.gamma.at(n + 1);
    Inputs in{g.coeff(0), f.Cseq.at(n + 1), f.Dseq.at(n + 1),
              n == 0 ? f.D : f.Dseq.at(n)};
    if (min_index_out) *min_index_out = n;
    return in;
  }
  const int M = br.modulus;
  const int r = br.residue;
  auto g = f.gamma.class_form(M, r, 1);
  auto c1 = f.Cseq.class_form(M, r, 1);
  auto d1 = f.Dseq.class_form(M, r, 1);
  auto d0 = f.Dseq.class_form(M, r, 0);
  long min_t = std::max({g.min_n, c1.min_n, d1.min_n, d0.min_n});
  while (M * min_t + r < 1) ++min_t;  // D_n comes from Dseq, so n >= 1
  if (min_index_out) *min_index_out = M * min_t + r;
  return Inputs{g.form.coeff(0), std::move(c1.form), std::move(d1.form), std::move(d0.form)};
}

}  // namespace

std::vector<Branch> derivation_branches(const LHFamily& f) {
  const int M = f.derivation_modulus();
  std::vector<Branch> out;
  for (int r = 0; r < M; ++r) {
    Branch br{r, M, 0};
    long min_index = 0;
    branch_inputs(f, br, &min_index);
    br.min_index = min_index;
    out.push_back(br);
  }
  return out;
}

std::vector<long> exceptional_indices(const LHFamily& f) {
  std::vector<long> out;
  for (const Branch& br : derivation_branches(f))
    for (long n = br.residue; n < br.min_index; n += br.modulus) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

std::array<StructureRelation, 4> build_relations(const LHFamily& f, const Branch& branch) {
  Inputs in = branch_inputs(f, branch, nullptr);
  const RingPtr& ring = f.ring;
  const XPoly& phi = f.phi;
  const XPoly phi_dx = phi.d_dx();
  const XPoly half_sum = (in.C_n1 + f.C).scaled(Rational(1, 2));    // (C_{n+1}+C_0)/2
  const XPoly half_diff = (in.C_n1 - f.C).scaled(Rational(1, 2));   // (C_{n+1}-C_0)/2

  StructureRelation s1{1,
                       XPoly::zero(ring),
                       f.B,
                       -(in.D_n1.scaled(in.gamma_n1)),
                       {-half_diff},
                       phi};

  std::array<StructureRelation, 4> rels{s1, s1, s1, s1};
  for (int level = 1; level < 4; ++level) {
    const StructureRelation& p = rels[static_cast<std::size_t>(level - 1)];
    XPoly g0 = phi * p.G0.d_dx() - half_diff * p.G0 - in.D_n1.scaled(in.gamma_n1) * p.G1 +
               f.B * p.H;
    XPoly g1 = in.D_n * p.G0 + half_sum * p.G1 + phi * p.G1.d_dx();
    XPoly h = -(f.D * p.G0) - half_sum * p.H + phi * p.H.d_dx();
    std::vector<XPoly> m(static_cast<std::size_t>(level) + 1, XPoly::zero(ring));
    m[static_cast<std::size_t>(level)] = phi * p.M[static_cast<std::size_t>(level - 1)] +
                                         p.phi_power * phi_dx.scaled(Rational(level));
    for (int j = 1; j < level; ++j)
      m[static_cast<std::size_t>(j)] =
          phi * (p.M[static_cast<std::size_t>(j)].d_dx() + p.M[static_cast<std::size_t>(j - 1)]);
    m[0] = phi * p.M[0].d_dx() + f.D * p.G1 - in.D_n * p.H;
    rels[static_cast<std::size_t>(level)] = StructureRelation{
        level + 1, std::move(g0), std::move(g1), std::move(h), std::move(m), p.phi_power * phi};
  }
  return rels;
}

namespace {

/// det of the rows (G0,G1,H) indexed a,b,c (0-based) of the four relations.
XPoly det3(const std::array<StructureRelation, 4>& r, int a, int b, int c) {
  const StructureRelation &A = r[static_cast<std::size_t>(a)],
                          &B = r[static_cast<std::size_t>(b)],
                          &C = r[static_cast<std::size_t>(c)];
  return A.G0 * (B.G1 * C.H - C.G1 * B.H) - A.G1 * (B.G0 * C.H - C.G0 * B.H) +
         A.H * (B.G0 * C.G1 - C.G0 * B.G1);
}

}  // namespace

OdeResult build_ode4(const std::array<StructureRelation, 4>& rels, const LHFamily& f,
                     const Branch& branch) {
  require_same_ring(f.ring, rels[0].G1.ring(), "build_ode4");
  XPoly delta4 = det3(rels, 0, 1, 2);
  XPoly delta3 = det3(rels, 0, 1, 3);
  XPoly delta2 = det3(rels, 0, 2, 3);
  XPoly delta1 = det3(rels, 1, 2, 3);

  const StructureRelation& r2 = rels[1];
  const StructureRelation& r3 = rels[2];
  const StructureRelation& r4 = rels[3];

  OdeResult ode;
  ode.order = 4;
  ode.branch = branch;
  ode.coeffs = {
      rels[3].phi_power * delta4,
      r4.M[3] * delta4 - rels[2].phi_power * delta3,
      r4.M[2] * delta4 - r3.M[2] * delta3 + rels[1].phi_power * delta2,
      r4.M[1] * delta4 - r3.M[1] * delta3 + r2.M[1] * delta2 - rels[0].phi_power * delta1,
      r4.M[0] * delta4 - r3.M[0] * delta3 + r2.M[0] * delta2 - rels[0].M[0] * delta1,
  };
  ode.degenerate = std::all_of(ode.coeffs.begin(), ode.coeffs.end(),
                               [](const XPoly& c) { return c.is_zero(); });
  return ode;
}

namespace {
void require_semiclassical(const LHFamily& f, const char* what) {
  if (!f.B.is_zero())
    throw SemiclassicalRequiredError(std::string(what) + " requires B == 0, family '" +
                                     f.name + "' is strict Laguerre-Hahn");
}
}  // namespace

OdeResult build_semiclassical_ode2(const LHFamily& f, const Branch& branch, ScForm form) {
  require_semiclassical(f, "second-order reduction");
  OdeResult ode;
  ode.order = 2;
  ode.branch = branch;
  if (form == ScForm::I) {
    auto rels = build_relations(f, branch);
    const StructureRelation &r1 = rels[0], &r2 = rels[1];
    ode.coeffs = {
        r1.phi_power * f.phi * r1.H,              // phi^2 H_1
        r2.M[1] * r1.H - f.phi * r2.H,            // M_{1,2} H_1 - phi H_2
        r2.M[0] * r1.H - r1.M[0] * r2.H,          // M_{0,2} H_1 - M_{0,1} H_2
    };
  } else {
    Inputs in = branch_inputs(f, branch, nullptr);
    const XPoly& phi = f.phi;
    XPoly dn1_dx = in.D_n1.d_dx();
    XPoly c_diff = in.C_n1 - f.C;
    XPoly e = in.D_n1 * (in.D_n.scaled(in.gamma_n1) * in.D_n1 -
                         (in.C_n1 * in.C_n1 - f.C * f.C).scaled(Rational(1, 4)) -
                         (phi * c_diff.d_dx()).scaled(Rational(1, 2))) +
              (c_diff.scaled(Rational(1, 2)) * phi * dn1_dx);
    ode.coeffs = {
        phi * phi * in.D_n1,
        phi * ((phi.d_dx() + f.C) * in.D_n1 - phi * dn1_dx),
        std::move(e),
    };
  }
  ode.degenerate = std::all_of(ode.coeffs.begin(), ode.coeffs.end(),
                               [](const XPoly& c) { return c.is_zero(); });
  return ode;
}

OdeResult build_semiclassical_ode34(const LHFamily& f, const Branch& branch, int order) {
  require_semiclassical(f, "higher-order semiclassical reduction");
  if (order != 3 && order != 4)
    throw ConfigError("semiclassical reduction order must be 3 or 4");
  auto rels = build_relations(f, branch);
  const StructureRelation& r1 = rels[0];
  const StructureRelation& rk = rels[static_cast<std::size_t>(order - 1)];
  OdeResult ode;
  ode.order = order;
  ode.branch = branch;
  ode.coeffs.push_back(rk.phi_power * r1.H);  // phi^k H_1
  for (int j = order - 1; j >= 1; --j)
    ode.coeffs.push_back(rk.M[static_cast<std::size_t>(j)] * r1.H);
  // P'_{n+1} coefficient picks up -phi H_k, the P_{n+1} one -M_{0,1} H_k.
  ode.coeffs[static_cast<std::size_t>(order - 1)] -= f.phi * rk.H;
  ode.coeffs.push_back(rk.M[0] * r1.H - r1.M[0] * rk.H);
  ode.degenerate = std::all_of(ode.coeffs.begin(), ode.coeffs.end(),
                               [](const XPoly& c) { return c.is_zero(); });
  return ode;
}

XPoly sum_D_via_identity(const LHFamily& f, const Branch& branch) {
  Inputs in = branch_inputs(f, branch, nullptr);
  XPoly bracket = in.D_n.scaled(in.gamma_n1) * in.D_n1 -
                  (in.C_n1 * in.C_n1 - f.C * f.C).scaled(Rational(1, 4));
  try {
    return (-bracket).divide_exact(f.phi);
  } catch (const DivisibilityError& e) {
    throw DivisibilityError(
        "family data violates the summation identity (phi does not divide the bracket): " +
        std::string(e.what()));
  }
}

OdeResult build_wronskian_form(const LHFamily& f, const Branch& branch) {
  require_semiclassical(f, "Wronskian form");
  Inputs in = branch_inputs(f, branch, nullptr);
  auto wronskian = [](const XPoly& a, const XPoly& b) { return a * b.d_dx() - a.d_dx() * b; };
  XPoly sum_d = sum_D_via_identity(f, branch);
  XPoly half_diff = (in.C_n1 - f.C).scaled(Rational(1, 2));
  OdeResult ode;
  ode.order = 2;
  ode.branch = branch;
  ode.coeffs = {
      f.phi * in.D_n1,
      f.C * in.D_n1 - wronskian(f.phi, in.D_n1),
      wronskian(half_diff, in.D_n1) - in.D_n1 * sum_d,
  };
  ode.degenerate = std::all_of(ode.coeffs.begin(), ode.coeffs.end(),
                               [](const XPoly& c) { return c.is_zero(); });
  return ode;
}

OdeResult build_classical_ode(const LHFamily& f, const Branch& branch) {
  if (!f.B.is_zero())
    throw ClassicalRequiredError("classical form requires B == 0");
  XPoly psi = psi_of(f);
  if (f.phi.degree() > 2 || psi.degree() != 1)
    throw ClassicalRequiredError("classical form requires deg phi <= 2 and deg psi = 1");
  Inputs in = branch_inputs(f, branch, nullptr);
  if (in.D_n1.degree() > 0)
    throw ClassicalRequiredError("classical form requires D_{n+1} constant in x");
  XPoly sum_d = sum_D_via_identity(f, branch);
  XPoly half_diff_dx = (in.C_n1 - f.C).scaled(Rational(1, 2)).d_dx();
  OdeResult ode;
  ode.order = 2;
  ode.branch = branch;
  ode.coeffs = {f.phi, -psi, -(sum_d + half_diff_dx)};
  ode.degenerate = false;
  return ode;
}

}  // namespace lh

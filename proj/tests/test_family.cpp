#include "doctest.h"
#include "lh/errors.hpp"
#include "lh/expr.hpp"
#include "lh/family.hpp"
#include "util.hpp"

using namespace lh;
using lh::test::family_path;

namespace {
XPoly X(const LHFamily& f, const char* s) {
  return eval_to_xpoly(*parse_expr(s, f.params), f.ring);
}
RatFun F(const LHFamily& f, const char* s) {
  return eval_to_ratfun(*parse_expr(s, f.params), f.ring);
}
}  // namespace

TEST_CASE("load case 1") {
  LHFamily f = load_family_file(family_path("hermite_case1"));
  CHECK(f.name == "hermite_case1");
  CHECK(f.params == std::vector<std::string>{"tau", "lambda", "rho"});
  CHECK(f.phi == X(f, "1"));
  CHECK(f.beta.at(0) == X(f, "lambda"));
  CHECK(f.beta.at(5) == X(f, "0"));
  CHECK(f.gamma.at(1) == X(f, "rho*(tau+1)/2"));
  CHECK(f.gamma.at(4) == X(f, "(tau+4)/2"));  // n=3 in (n+tau+1)/2
  CHECK(f.Cseq.at(7) == X(f, "-2*x"));
  CHECK(f.derivation_modulus() == 1);
  CHECK(!f.is_semiclassical());
}

TEST_CASE("load rejects uncovered and overlapping sequences") {
  // beta branch covering only even indices
  const char* uncovered = R"json({
    "name": "bad", "parameters": [],
    "phi": "1", "B": "0", "C": "-2*x", "D": "-2",
    "beta": {"branches": [{"residue": 0, "modulus": 2, "min_index": 0, "expr": "0"}]},
    "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "n/2"}]},
    "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
    "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2"}]}
  })json";
  CHECK_THROWS_WITH_AS(load_family(uncovered), doctest::Contains("uncovered index 1"),
                       SchemaError);

  const char* overlapping = R"json({
    "name": "bad", "parameters": [],
    "phi": "1", "B": "0", "C": "-2*x", "D": "-2",
    "beta": {"exceptional": {"2": "1"},
             "branches": [{"residue": 0, "modulus": 1, "min_index": 0, "expr": "0"}]},
    "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "n/2"}]},
    "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
    "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2"}]}
  })json";
  CHECK_THROWS_WITH_AS(load_family(overlapping), doctest::Contains("overlapping"), SchemaError);

  // gap below min_index with no exceptional entry
  const char* gap = R"json({
    "name": "bad", "parameters": [],
    "phi": "1", "B": "0", "C": "-2*x", "D": "-2",
    "beta": {"branches": [{"residue": 0, "modulus": 1, "min_index": 0, "expr": "0"}]},
    "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 2, "expr": "n/2"}]},
    "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
    "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2"}]}
  })json";
  CHECK_THROWS_WITH_AS(load_family(gap), doctest::Contains("uncovered index 1"), SchemaError);
}

TEST_CASE("load semiclassical_class1 records modulus 2") {
  LHFamily f = load_family_file(family_path("semiclassical_class1"));
  CHECK(f.gamma.modulus() == 2);
  CHECK(f.derivation_modulus() == 2);
  CHECK(f.is_semiclassical());
  CHECK(f.beta.at(0) == X(f, "1"));
  CHECK(f.beta.at(3) == X(f, "-1"));
  // gamma_2 at (alpha,beta)=(1/2,1/3) is -48/391
  std::vector<Rational> pt(f.ring->size(), Rational(0));
  pt[*f.ring->index_of("alpha")] = Rational(1, 2);
  pt[*f.ring->index_of("beta")] = Rational(1, 3);
  CHECK(f.gamma.at(2).coeff(0).eval(pt) == Rational(-48, 391));
}

TEST_CASE("seq_branch closed forms") {
  LHFamily f = load_family_file(family_path("hermite_case1"));
  auto cf = f.gamma.branch_form(0, 1);  // gamma_{n+1}
  CHECK(cf.form == X(f, "(n+tau+1)/2"));
  CHECK(cf.min_n == 1);  // gamma_1 is exceptional
  // constant sequence: any shift is the same constant
  auto dd = f.Dseq.branch_form(0, 5);
  CHECK(dd.form == X(f, "-2"));

  LHFamily g = load_family_file(family_path("semiclassical_class1"));
  // C_{n+1} on the even sequence branch (index 2n+1, odd entries of Cseq)
  auto c1 = g.Cseq.class_form(2, 0, 1);
  CHECK(c1.form == X(g, "(4*n+2*alpha+2*beta+3)*x^2 + x - 4*alpha - 2*beta - 4*n - 4"));
  CHECK(c1.min_n == 0);
  // D_n on the even branch needs index 2n >= 2
  auto d0 = g.Dseq.class_form(2, 0, 0);
  CHECK(d0.min_n == 1);
}

TEST_CASE("psi_of") {
  LHFamily hc = load_family_file(family_path("hermite_classical"));
  CHECK(psi_of(hc) == X(hc, "2*x"));
  LHFamily sc = load_family_file(family_path("semiclassical_class1"));
  CHECK(psi_of(sc) == X(sc, "-(2*alpha+2*beta+4)*x^2 + x + 2*beta + 1"));
  // C = -phi' gives psi = 0
  const char* zero_psi = R"json({
    "name": "zpsi", "parameters": [],
    "phi": "1", "B": "0", "C": "0", "D": "-2",
    "beta": {"branches": [{"residue": 0, "modulus": 1, "min_index": 0, "expr": "0"}]},
    "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "n/2"}]},
    "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
    "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2"}]}
  })json";
  CHECK(psi_of(load_family(zero_psi)).is_zero());
}

TEST_CASE("class_degrees") {
  LHFamily c1 = load_family_file(family_path("hermite_case1"));
  ClassReport r1 = class_degrees(c1);
  CHECK(r1.deg_phi == 0);
  CHECK(*r1.deg_psi == 1);
  CHECK(*r1.deg_B == 2);
  CHECK(r1.s == 0);

  LHFamily sc = load_family_file(family_path("semiclassical_class1"));
  ClassReport r7 = class_degrees(sc);
  CHECK(r7.deg_phi == 3);
  CHECK(!r7.deg_B.has_value());
  CHECK(*r7.deg_psi == 2);
  CHECK(r7.s == 1);

  LHFamily hc = load_family_file(family_path("hermite_classical"));
  ClassReport rh = class_degrees(hc);
  CHECK(rh.s == 0);
  CHECK(!rh.deg_B.has_value());
}

TEST_CASE("affine_shift_family") {
  LHFamily c2 = load_family_file(family_path("hermite_case2"));
  LHFamily same = affine_shift_family(c2, Rational(1), Rational(0));
  CHECK(same.phi == c2.phi);
  CHECK(same.B == c2.B);
  CHECK(same.C == c2.C);
  CHECK(same.sequences_stale);

  // (a,b) = (1,-lambda): B(x-lambda) recomputed exactly
  LHFamily sh = affine_shift_family(c2, Rational(1), Rational(-1));
  std::vector<Rational> pt(c2.ring->size(), Rational(0));
  pt[*c2.ring->index_of("lambda")] = Rational(1);
  pt[*c2.ring->index_of("rho")] = Rational(3);
  // B = 2x^2-2x-2 at lambda=1,rho=3; B(x-1) = 2(x-1)^2-2(x-1)-2 = 2x^2-6x+2
  XPoly bs = sh.B;
  Rational c0 = bs.coeff(0).eval(pt), c1 = bs.coeff(1).eval(pt), c2v = bs.coeff(2).eval(pt);
  CHECK(c2v == Rational(2));
  CHECK(c1 == Rational(-6));
  CHECK(c0 == Rational(2));

  // constants are fixed when deg phi = 0
  CHECK(sh.phi == c2.phi);
  CHECK_THROWS_AS(affine_shift_family(c2, Rational(0), Rational(1)), InvalidAffineError);

  // class is shift-invariant
  LHFamily sc = load_family_file(family_path("semiclassical_class1"));
  for (auto [a, b] : {std::pair<long, long>{2, 1}, {-1, 3}, {5, 0}})
    CHECK(class_degrees(affine_shift_family(sc, Rational(a), Rational(b))).s ==
          class_degrees(sc).s);
}

TEST_CASE("perturb_recurrence") {
  LHFamily hc = load_family_file(family_path("hermite_classical"));
  // r=0, mu0=0: identity
  auto [b0, g0] = perturb_recurrence(hc.beta, hc.gamma, RatFun::constant(hc.ring, 0), {}, {}, 0);
  CHECK(b0.at(0) == hc.beta.at(0));
  CHECK(g0.at(1) == hc.gamma.at(1));
  CHECK(g0.at(5) == hc.gamma.at(5));

  // Hermite with mu0 = lambda-hat, r=1, mu1=0, lambda1=rho: gamma~_1 = rho/2
  auto ring2 = make_ring({"x", "n", "lambda", "rho"});
  auto lam = RatFun::variable(ring2, "lambda");
  auto rho = RatFun::variable(ring2, "rho");
  // rebuild classical Hermite sequences over the parametrized ring
  std::vector<SeqBranch> bz{{0, 1, 1, XPoly::zero(ring2)}};
  std::map<long, XPoly> bexc{{0, XPoly::zero(ring2)}};
  ParamSeq beta(0, bexc, bz);
  std::vector<SeqBranch> gz{
      {0, 1, 1, XPoly::constant(RatFun::variable(ring2, "n") / RatFun::constant(ring2, 2))}};
  ParamSeq gamma(1, {}, gz);
  auto [bp, gp] = perturb_recurrence(beta, gamma, lam, {RatFun::constant(ring2, 0)}, {rho}, 1);
  CHECK(bp.at(0) == XPoly::constant(lam));
  CHECK(bp.at(1) == XPoly::zero(ring2));
  CHECK(gp.at(1) == XPoly::constant(rho / RatFun::constant(ring2, 2)));
  CHECK(gp.at(2) == gamma.at(2));

  // r=1 with lambda1=1, mu=0: identity values
  auto [bi, gi] = perturb_recurrence(beta, gamma, RatFun::constant(ring2, 0),
                                     {RatFun::constant(ring2, 0)},
                                     {RatFun::constant(ring2, 1)}, 1);
  CHECK(bi.at(1) == beta.at(1));
  CHECK(gi.at(1) == gamma.at(1));
  CHECK_THROWS_AS(perturb_recurrence(beta, gamma, lam, {RatFun::constant(ring2, 0)},
                                     {RatFun::constant(ring2, 0)}, 1),
                  SchemaError);
}

TEST_CASE("associated_shift") {
  LHFamily c1 = load_family_file(family_path("hermite_case1"));
  auto [b0, g0] = associated_shift(c1.beta, c1.gamma, 0);
  CHECK(b0.at(0) == c1.beta.at(0));
  CHECK(g0.at(1) == c1.gamma.at(1));

  auto [b1, g1] = associated_shift(c1.beta, c1.gamma, 1);
  CHECK(b1.at(0) == XPoly::zero(c1.ring));
  CHECK(b1.at(3) == XPoly::zero(c1.ring));
  // gamma^(1)_{n+1} = (n+tau+2)/2 for all n >= 0
  auto cf = g1.branch_form(0, 1);
  CHECK(cf.form == X(c1, "(n+tau+2)/2"));
  CHECK(cf.min_n == 0);
  CHECK(g1.at(1) == X(c1, "(tau+2)/2"));

  // constant sequences are fixed points
  LHFamily hc = load_family_file(family_path("hermite_classical"));
  auto [bc, gc] = associated_shift(hc.beta, hc.gamma, 3);
  CHECK(bc.at(0) == XPoly::zero(hc.ring));
  CHECK(bc.at(7) == XPoly::zero(hc.ring));
  CHECK(gc.at(2) == X(hc, "5/2"));  // gamma_5 = 5/2
}

TEST_CASE("perturb then associated shift restores the tail") {
  auto ring2 = make_ring({"x", "n", "lambda", "rho"});
  std::map<long, XPoly> bexc{{0, XPoly::zero(ring2)}};
  ParamSeq beta(0, bexc, {{0, 1, 1, XPoly::zero(ring2)}});
  ParamSeq gamma(1, {},
                 {{0, 1, 1, XPoly::constant(RatFun::variable(ring2, "n") /
                                            RatFun::constant(ring2, 2))}});
  const int r = 2;
  auto [bp, gp] = perturb_recurrence(
      beta, gamma, RatFun::variable(ring2, "lambda"),
      {RatFun::constant(ring2, 1), RatFun::constant(ring2, 2)},
      {RatFun::variable(ring2, "rho"), RatFun::constant(ring2, 3)}, r);
  auto [bs, gs] = associated_shift(bp, gp, r);
  auto [bo, go] = associated_shift(beta, gamma, r);
  for (long n = 1; n <= 6; ++n) {
    CHECK(bs.at(n) == bo.at(n));  // beta~_n = beta_n for n > r
    CHECK(gs.at(n) == go.at(n));
  }
}

TEST_CASE("verify_sr_recurrences on the bundled families") {
  for (const char* name :
       {"hermite_case1", "hermite_case2", "hermite_classical", "semiclassical_class1"}) {
    LHFamily f = load_family_file(family_path(name));
    SrReport rep = verify_sr_recurrences(f);
    INFO(name);
    for (const SrRow& row : rep.rows) {
      INFO(row.where, " ", row.relation, " residual ", row.residual);
      CHECK(row.zero);
    }
    CHECK(rep.all_zero());
  }
}

TEST_CASE("verify_sr_recurrences reports corrupt data") {
  // case 1 with D_{n+1} = +2 (sign flipped)
  std::string text = R"json({
    "name": "corrupt", "parameters": ["tau", "lambda", "rho"],
    "phi": "1",
    "B": "2*(rho-1)/rho*x^2 + 2*lambda*(2-rho)/rho*x + 1 - rho*(tau+1) - 2*lambda^2/rho",
    "C": "2*(rho-2)/rho*x + 4*lambda/rho",
    "D": "-2/rho",
    "beta": {"exceptional": {"0": "lambda"},
             "branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "0"}]},
    "gamma": {"exceptional": {"1": "rho*(tau+1)/2"},
              "branches": [{"residue": 0, "modulus": 1, "min_index": 2, "expr": "(n+tau)/2"}]},
    "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
    "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "2"}]}
  })json";
  LHFamily f = load_family(text);
  SrReport rep = verify_sr_recurrences(f);
  CHECK(!rep.all_zero());
}

TEST_CASE("case-1 SR hand checks") {
  LHFamily f = load_family_file(family_path("hermite_case1"));
  // branch n >= 1: -C_n + 2(x - 0)(-2) = 2x - 4x = -2x = C_{n+1}
  XPoly lhs = -f.Cseq.at(3) + (XPoly::x(f.ring) * X(f, "-2")).scaled(Rational(2));
  CHECK(lhs == X(f, "-2*x"));
  // index 0: -C_0 + 2(x-lambda)(-2/rho) = -2x
  XPoly at0 = -f.C + ((XPoly::x(f.ring) - X(f, "lambda")) * X(f, "-2/rho")).scaled(Rational(2));
  CHECK(at0 == X(f, "-2*x"));
}

TEST_CASE("seq_at agrees with branch forms off the exceptional set") {
  lh::test::Gen gen(37);
  for (const char* name : {"hermite_case1", "semiclassical_class1"}) {
    LHFamily f = load_family_file(family_path(name));
    for (const ParamSeq* s : {&f.beta, &f.gamma, &f.Cseq, &f.Dseq}) {
      const int m = s->modulus();
      for (const SeqBranch& b : s->branches()) {
        auto cf = s->branch_form(b.residue, 0);
        for (int probe = 0; probe < 4; ++probe) {
          long k = cf.min_n + gen.pick(0, 5);
          long idx = static_cast<long>(m) * k + b.residue;
          if (idx < s->domain_start()) continue;
          auto nv = f.nvar();
          CHECK(s->at(idx) == cf.form.substitute(nv, Rational(k)));
        }
      }
    }
  }
}

#include "lh/family.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "lh/errors.hpp"
#include "lh/expr.hpp"

namespace lh {

namespace {
long ceil_div(long a, long b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}
}  // namespace

ParamSeq::ParamSeq(long domain_start, std::map<long, XPoly> exceptional,
                   std::vector<SeqBranch> branches)
    : domain_start_(domain_start),
      exceptional_(std::move(exceptional)),
      branches_(std::move(branches)) {
  validate();
  std::sort(branches_.begin(), branches_.end(),
            [](const SeqBranch& a, const SeqBranch& b) { return a.residue < b.residue; });
}

void ParamSeq::validate() const {
  if (branches_.empty()) throw SchemaError("sequence needs at least one branch");
  const int m = branches_.front().modulus;
  if (m < 1) throw SchemaError("branch modulus must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (const SeqBranch& b : branches_) {
    if (b.modulus != m)
      throw SchemaError("branch moduli within one sequence must be equal");
    if (b.residue < 0 || b.residue >= m)
      throw SchemaError("branch residue out of range");
    if (seen[static_cast<std::size_t>(b.residue)])
      throw SchemaError("overlapping branches: duplicate residue " + std::to_string(b.residue));
    seen[static_cast<std::size_t>(b.residue)] = true;
  }
  for (int r = 0; r < m; ++r) {
    if (!seen[static_cast<std::size_t>(r)]) {
      // Smallest uncovered index of that class.
      long idx = r;
      while (idx < domain_start_) idx += m;
      while (exceptional_.count(idx)) idx += m;
      throw SchemaError("uncovered index " + std::to_string(idx) +
                        " (no branch for residue " + std::to_string(r) + ")");
    }
  }
  for (const auto& [idx, body] : exceptional_) {
    if (idx < domain_start_)
      throw SchemaError("exceptional index " + std::to_string(idx) + " below domain start");
    auto b = std::find_if(branches_.begin(), branches_.end(),
                          [&](const SeqBranch& br) { return br.residue == idx % m; });
    if (idx >= std::max(b->min_index, domain_start_))
      throw SchemaError("overlapping branches: index " + std::to_string(idx) +
                        " is both exceptional and branch-covered");
  }
  for (const SeqBranch& b : branches_) {
    for (long idx = domain_start_; idx < b.min_index; ++idx) {
      if ((idx % m + m) % m != b.residue) continue;
      if (!exceptional_.count(idx))
        throw SchemaError("uncovered index " + std::to_string(idx));
    }
  }
}

XPoly ParamSeq::at(long idx) const {
  if (idx < domain_start_)
    throw SequenceDomainError("sequence index " + std::to_string(idx) + " below domain start");
  auto it = exceptional_.find(idx);
  if (it != exceptional_.end()) return it->second;
  const int m = modulus();
  const int r = static_cast<int>((idx % m + m) % m);
  for (const SeqBranch& b : branches_) {
    if (b.residue != r) continue;
    if (idx < std::max(b.min_index, domain_start_))
      throw SequenceDomainError("sequence index " + std::to_string(idx) + " not covered");
    long k = (idx - r) / m;
    auto n = b.body.ring()->index_of("n");
    return b.body.substitute(*n, Rational(k));
  }
  throw SequenceDomainError("sequence index " + std::to_string(idx) + " not covered");
}

ParamSeq::ClosedForm ParamSeq::branch_form(int residue, long shift) const {
  return class_form(modulus(), residue, shift);
}

ParamSeq::ClosedForm ParamSeq::class_form(int big_modulus, int residue, long shift) const {
  const int m = modulus();
  if (big_modulus % m != 0)
    throw SequenceDomainError("branch modulus " + std::to_string(m) +
                              " does not divide requested modulus " + std::to_string(big_modulus));
  const long target = residue + shift;  // index = big_modulus * n + target
  const int r = static_cast<int>((target % m + m) % m);
  for (const SeqBranch& b : branches_) {
    if (b.residue != r) continue;
    // index = big*n + target = m*(b.modulus-quotient) + r
    long mult = big_modulus / m;
    long off = (target - r) / m;
    XPoly form = b.body.subst_index(mult, off);
    long lo = std::max(b.min_index, domain_start_);
    long min_n = std::max<long>(0, ceil_div(lo - target, big_modulus));
    return {std::move(form), min_n};
  }
  throw SequenceDomainError("no branch for residue " + std::to_string(r));
}

ParamSeq ParamSeq::shifted(long r) const {
  if (r == 0) return *this;
  const int m = modulus();
  std::map<long, XPoly> exc;
  for (const auto& [idx, body] : exceptional_)
    if (idx - r >= domain_start_) exc.emplace(idx - r, body);
  std::vector<SeqBranch> brs;
  for (const SeqBranch& b : branches_) {
    int residue = static_cast<int>(((b.residue - r) % m + m) % m);
    long delta = (residue + r - b.residue) / m;
    brs.push_back(SeqBranch{residue, m, std::max(domain_start_, b.min_index - r),
                            b.body.shift_index(delta)});
  }
  return ParamSeq(domain_start_, std::move(exc), std::move(brs));
}

ParamSeq ParamSeq::with_exceptional(std::map<long, XPoly> entries) const {
  long top = domain_start_ - 1;
  std::map<long, XPoly> exc = exceptional_;
  for (auto& [idx, body] : entries) {
    top = std::max(top, idx);
    exc.insert_or_assign(idx, body);
  }
  std::vector<SeqBranch> brs = branches_;
  for (SeqBranch& b : brs) b.min_index = std::max(b.min_index, top + 1);
  // Fill any index forced under the raised branch start that has no entry.
  for (SeqBranch& b : brs) {
    for (long idx = domain_start_; idx < b.min_index; ++idx) {
      if ((idx % b.modulus + b.modulus) % b.modulus != b.residue) continue;
      if (!exc.count(idx)) exc.emplace(idx, at(idx));
    }
  }
  return ParamSeq(domain_start_, std::move(exc), std::move(brs));
}

int LHFamily::derivation_modulus() const {
  int m = 1;
  for (const ParamSeq* s : {&beta, &gamma, &Cseq, &Dseq}) m = std::lcm(m, s->modulus());
  return m;
}

namespace {

using nlohmann::json;

XPoly parse_xpoly_field(const json& j, const char* field, const RingPtr& ring,
                        const std::vector<std::string>& params) {
  if (!j.contains(field) || !j.at(field).is_string())
    throw SchemaError(std::string("missing or non-string field '") + field + "'");
  return eval_to_xpoly(*parse_expr(j.at(field).get<std::string>(), params), ring);
}

ParamSeq parse_seqspec(const json& j, const char* field, long domain_start, bool x_free,
                       const RingPtr& ring, const std::vector<std::string>& params) {
  if (!j.contains(field) || !j.at(field).is_object())
    throw SchemaError(std::string("missing or non-object field '") + field + "'");
  const json& spec = j.at(field);
  std::map<long, XPoly> exc;
  if (spec.contains("exceptional")) {
    for (const auto& [key, val] : spec.at("exceptional").items()) {
      long idx = 0;
      try {
        idx = std::stol(key);
      } catch (...) {
        throw SchemaError("exceptional index '" + key + "' is not an integer");
      }
      exc.emplace(idx, eval_to_xpoly(*parse_expr(val.get<std::string>(), params), ring));
    }
  }
  if (!spec.contains("branches") || !spec.at("branches").is_array())
    throw SchemaError(std::string(field) + ": missing 'branches' array");
  std::vector<SeqBranch> brs;
  for (const json& b : spec.at("branches")) {
    brs.push_back(SeqBranch{
        b.at("residue").get<int>(), b.at("modulus").get<int>(), b.at("min_index").get<long>(),
        eval_to_xpoly(*parse_expr(b.at("expr").get<std::string>(), params), ring)});
  }
  ParamSeq seq(domain_start, std::move(exc), std::move(brs));
  if (x_free) {
    auto check = [&](const XPoly& p, const std::string& what) {
      if (p.degree() > 0)
        throw SchemaError(std::string(field) + " " + what + " must not depend on x");
    };
    for (const auto& [idx, body] : seq.exceptional())
      check(body, "entry " + std::to_string(idx));
    for (const SeqBranch& b : seq.branches()) check(b.body, "branch body");
  }
  return seq;
}

}  // namespace

LHFamily load_family(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("name") || !j.at("name").is_string())
    throw SchemaError("missing family 'name'");
  std::vector<std::string> params;
  if (j.contains("parameters")) {
    for (const json& p : j.at("parameters")) params.push_back(p.get<std::string>());
  }
  for (const std::string& p : params) {
    if (p == "x" || p == "n") throw SchemaError("parameter may not shadow 'x' or 'n'");
    if (std::count(params.begin(), params.end(), p) > 1)
      throw SchemaError("duplicate parameter '" + p + "'");
  }
  std::vector<std::string> vars = {"x", "n"};
  vars.insert(vars.end(), params.begin(), params.end());
  RingPtr ring = make_ring(vars);

  LHFamily f{
      j.at("name").get<std::string>(),
      params,
      ring,
      parse_xpoly_field(j, "phi", ring, params),
      parse_xpoly_field(j, "B", ring, params),
      parse_xpoly_field(j, "C", ring, params),
      parse_xpoly_field(j, "D", ring, params),
      parse_seqspec(j, "beta", 0, true, ring, params),
      parse_seqspec(j, "gamma", 1, true, ring, params),
      parse_seqspec(j, "C_seq", 1, false, ring, params),
      parse_seqspec(j, "D_seq", 1, false, ring, params),
      {},
      j.value("regularity_notes", std::string()),
      false};

  if (f.phi.is_zero()) throw SchemaError("phi must be nonzero");
  if (f.phi.degree() > 0) {
    if (!f.phi.leading().is_one()) throw SchemaError("phi must be monic in x");
  } else if (!(f.phi.coeff(0).is_one())) {
    throw SchemaError("constant phi must be 1");
  }
  for (const XPoly* p : {&f.phi, &f.B, &f.C, &f.D}) {
    for (const RatFun& c : p->coeffs())
      if (c.depends_on(f.nvar()))
        throw SchemaError("Riccati coefficients must not depend on n");
  }

  if (j.contains("assignments")) {
    for (const auto& [key, val] : j.at("assignments").items()) {
      if (std::find(params.begin(), params.end(), key) == params.end())
        throw SchemaError("assignment for undeclared parameter '" + key + "'");
      auto r = Rational::parse(val.get<std::string>());
      if (!r) throw SchemaError("assignment '" + key + "' is not a rational p/q");
      f.assignments.emplace(key, *r);
    }
  }
  return f;
}

LHFamily load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open family file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_family(ss.str());
}

XPoly psi_of(const LHFamily& f) { return -(f.phi.d_dx()) - f.C; }

ClassReport class_degrees(const LHFamily& f) {
  ClassReport r;
  XPoly psi = psi_of(f);
  r.deg_phi = f.phi.degree();
  if (!psi.is_zero()) r.deg_psi = psi.degree();
  if (!f.B.is_zero()) r.deg_B = f.B.degree();
  int top = std::max(r.deg_phi, r.deg_B.value_or(r.deg_phi));
  int s = top - 2;
  if (r.deg_psi) s = std::max(s, *r.deg_psi - 1);
  r.s = s;
  return r;
}

LHFamily affine_shift_family(const LHFamily& f, const Rational& a, const Rational& b) {
  if (a.is_zero()) throw InvalidAffineError("affine family shift with a = 0");
  LHFamily g = f;
  const long t = f.phi.degree();
  RatFun ar = RatFun::constant(f.ring, a), br = RatFun::constant(f.ring, b);
  Rational a_mt = a.pow(-t);
  g.phi = f.phi.subst_affine(ar, br).scaled(a_mt);
  g.B = f.B.subst_affine(ar, br).scaled(a_mt);
  XPoly psi_shift = psi_of(f).subst_affine(ar, br).scaled(a.pow(1 - t));
  g.C = -(g.phi.d_dx()) - psi_shift;
  // D and the sequence data have no published transform; they are left as-is
  // and the family is flagged stale.
  g.sequences_stale = true;
  if (!g.regularity_notes.empty()) g.regularity_notes += "\n";
  g.regularity_notes += "[affine shift applied: sequence data and D are stale]";
  return g;
}

std::pair<ParamSeq, ParamSeq> perturb_recurrence(const ParamSeq& beta, const ParamSeq& gamma,
                                                 const RatFun& mu0,
                                                 const std::vector<RatFun>& mu,
                                                 const std::vector<RatFun>& lambda, int r) {
  if (r < 0) throw SchemaError("perturbation order must be >= 0");
  if (static_cast<int>(mu.size()) != r || static_cast<int>(lambda.size()) != r)
    throw SchemaError("perturbation lists must have length r");
  for (const RatFun& l : lambda)
    if (l.is_zero()) throw SchemaError("perturbation lambda entries must be nonzero");

  std::map<long, XPoly> bexc;
  bexc.emplace(0, beta.at(0) + XPoly::constant(mu0));
  for (int i = 1; i <= r; ++i) bexc.emplace(i, beta.at(i) + XPoly::constant(mu[i - 1]));
  std::map<long, XPoly> gexc;
  for (int i = 1; i <= r; ++i) gexc.emplace(i, gamma.at(i).scaled(lambda[i - 1]));
  return {beta.with_exceptional(std::move(bexc)), gamma.with_exceptional(std::move(gexc))};
}

std::pair<ParamSeq, ParamSeq> associated_shift(const ParamSeq& beta, const ParamSeq& gamma,
                                               int r) {
  if (r < 0) throw SchemaError("associated order must be >= 0");
  return {beta.shifted(r), gamma.shifted(r)};
}

bool SrReport::all_zero() const {
  return std::all_of(rows.begin(), rows.end(), [](const SrRow& r) { return r.zero; });
}

namespace {

RatFun as_scalar(const XPoly& p, const char* what) {
  if (p.degree() > 0)
    throw SchemaError(std::string(what) + " unexpectedly depends on x");
  return p.coeff(0);
}

void push_row(SrReport& rep, std::string where, const char* rel, const XPoly& residual) {
  rep.rows.push_back(SrRow{std::move(where), rel, residual.is_zero(),
                           residual.is_zero() ? "0" : residual.str()});
}

std::string branch_label(int residue, int modulus) {
  if (modulus == 1) return "branch n";
  if (residue == 0) return "branch " + std::to_string(modulus) + "n";
  return "branch " + std::to_string(modulus) + "n+" + std::to_string(residue);
}

}  // namespace

SrReport verify_sr_recurrences(const LHFamily& f) {
  SrReport rep;
  const int M = f.derivation_modulus();
  const XPoly x = XPoly::x(f.ring);

  std::vector<long> boundary;
  for (int r = 0; r < M; ++r) {
    auto beta_n = f.beta.class_form(M, r, 0);
    auto C_n = f.Cseq.class_form(M, r, 0);
    auto C_n1 = f.Cseq.class_form(M, r, 1);
    auto D_nm1 = f.Dseq.class_form(M, r, -1);
    auto D_n = f.Dseq.class_form(M, r, 0);
    auto D_n1 = f.Dseq.class_form(M, r, 1);
    auto g_n = f.gamma.class_form(M, r, 0);
    auto g_n1 = f.gamma.class_form(M, r, 1);
    long min_t = 0;
    for (const auto* cf : {&beta_n, &C_n, &C_n1, &D_nm1, &D_n, &D_n1, &g_n, &g_n1})
      min_t = std::max(min_t, cf->min_n);
    // Generic index n = M*t + r must keep D_{n-1} and gamma_n inside their
    // domains (index >= 1), i.e. n >= 1.
    while (M * min_t + r < 1) ++min_t;
    for (long n = r; n < M * min_t + r; n += M)
      if (n >= 0) boundary.push_back(n);

    XPoly xb = x - XPoly::constant(as_scalar(beta_n.form, "beta"));
    RatFun gn = as_scalar(g_n.form, "gamma"), gn1 = as_scalar(g_n1.form, "gamma");
    std::string label = branch_label(r, M);
    push_row(rep, label, "SR-1", C_n1.form + C_n.form - (xb * D_n.form).scaled(Rational(2)));
    push_row(rep, label, "SR-2",
             D_n1.form.scaled(gn1) + f.phi - D_nm1.form.scaled(gn) + xb * C_n.form -
                 xb * xb * D_n.form);
  }

  std::sort(boundary.begin(), boundary.end());
  for (long n : boundary) {
    XPoly C_n = n == 0 ? f.C : f.Cseq.at(n);
    XPoly D_n = n == 0 ? f.D : f.Dseq.at(n);
    XPoly D_nm1 = n == 0 ? f.B : (n == 1 ? f.D : f.Dseq.at(n - 1));
    RatFun g_n = n == 0 ? RatFun::constant(f.ring, 1) : as_scalar(f.gamma.at(n), "gamma");
    RatFun g_n1 = as_scalar(f.gamma.at(n + 1), "gamma");
    XPoly C_n1 = f.Cseq.at(n + 1);
    XPoly D_n1 = f.Dseq.at(n + 1);
    XPoly xb = x - XPoly::constant(as_scalar(f.beta.at(n), "beta"));
    std::string label = "index " + std::to_string(n);
    push_row(rep, label, "SR-1", C_n1 + C_n - (xb * D_n).scaled(Rational(2)));
    push_row(rep, label, "SR-2",
             D_n1.scaled(g_n1) + f.phi - D_nm1.scaled(g_n) + xb * C_n - xb * xb * D_n);
  }
  return rep;
}

}  // namespace lh

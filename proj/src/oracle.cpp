#include "lh/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) {
  QPoly p;
  if (!c.is_zero()) p.c_.push_back(c);
  return p;
}

QPoly QPoly::x() {
  QPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& QPoly::leading() const {
  if (c_.empty()) throw std::logic_error("leading coefficient of zero QPoly");
  return c_.back();
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (Rational& v : r.c_) v = -v;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  if (r.c_.size() < b.c_.size()) r.c_.resize(b.c_.size(), Rational(0));
  for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
  r.trim();
  return r;
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  r.trim();
  return r;
}

QPoly QPoly::scaled(const Rational& v) const {
  QPoly r;
  if (v.is_zero()) return r;
  r.c_ = c_;
  for (Rational& q : r.c_) q *= v;
  return r;
}

QPoly QPoly::derivative() const {
  QPoly r;
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_.push_back(c_[i] * Rational(static_cast<long>(i)));
  r.trim();
  return r;
}

Rational QPoly::eval(const Rational& v) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
  return acc;
}

std::string QPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].str() << ")";
    if (i == 1) os << "*x";
    if (i > 1) os << "*x^" << i;
  }
  return os.str();
}

std::vector<QPoly> ttrr(const std::vector<Rational>& beta, const std::vector<Rational>& gamma,
                        int n_max) {
  std::vector<QPoly> P;
  P.reserve(static_cast<std::size_t>(n_max) + 1);
  P.push_back(QPoly::constant(1));
  if (n_max < 1) return P;
  P.push_back(QPoly::x() - QPoly::constant(beta.at(0)));
  for (int n = 0; n + 2 <= n_max; ++n) {
    QPoly next = (QPoly::x() - QPoly::constant(beta.at(static_cast<std::size_t>(n) + 1))) *
                     P[static_cast<std::size_t>(n) + 1] -
                 P[static_cast<std::size_t>(n)].scaled(gamma.at(static_cast<std::size_t>(n) + 1));
    P.push_back(std::move(next));
  }
  return P;
}

std::vector<QPoly> associated1(const std::vector<Rational>& beta,
                               const std::vector<Rational>& gamma, int n_max) {
  std::vector<Rational> b1, g1;
  for (std::size_t i = 1; i < beta.size(); ++i) b1.push_back(beta[i]);
  g1.push_back(Rational(0));  // index 0 unused
  for (std::size_t i = 2; i < gamma.size(); ++i) g1.push_back(gamma[i]);
  return ttrr(b1, g1, n_max);
}

bool CheckReport::all_zero() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.zero; });
}

std::string CheckReport::summary() const {
  std::size_t bad = 0;
  for (const CheckItem& i : items)
    if (!i.zero) ++bad;
  std::ostringstream os;
  os << items.size() << " residuals, " << bad << " nonzero";
  if (bad != 0) {
    for (const CheckItem& i : items)
      if (!i.zero) {
        os << "; first failure: " << i.relation << " at n=" << i.n;
        break;
      }
  }
  for (const std::string& n : notes) os << "; " << n;
  return os.str();
}

std::string CheckReport::to_json() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < items.size(); ++k) {
    const CheckItem& i = items[k];
    os << (k ? "," : "") << "{\"relation\":\"" << i.relation << "\",\"n\":" << i.n
       << ",\"residual_is_zero\":" << (i.zero ? "true" : "false")
       << ",\"residual_degree\":" << i.residual_degree << "}";
  }
  os << "]";
  return os.str();
}

void CheckReport::append(const CheckReport& o) {
  items.insert(items.end(), o.items.begin(), o.items.end());
  notes.insert(notes.end(), o.notes.begin(), o.notes.end());
}

NumericContext make_context(const LHFamily& f,
                            const std::map<std::string, Rational>& overrides, int n_max) {
  NumericContext ctx;
  ctx.n_max = n_max;
  ctx.assignment = f.assignments;
  for (const auto& [k, v] : overrides) {
    if (std::find(f.params.begin(), f.params.end(), k) == f.params.end())
      throw ConfigError("assignment for undeclared parameter '" + k + "'");
    ctx.assignment[k] = v;
  }
  for (const std::string& p : f.params)
    if (!ctx.assignment.count(p))
      throw ConfigError("parameter '" + p + "' has no value (no default, no --assign)");
  return ctx;
}

OracleSession::OracleSession(const LHFamily& f, const NumericContext& ctx)
    : f_(&f), ctx_(ctx) {
  for (const std::string& p : f.params)
    if (!ctx_.assignment.count(p)) throw ConfigError("parameter '" + p + "' unassigned");

  const long top = ctx_.n_max + 2;
  std::vector<Rational> point(f.ring->size(), Rational(0));
  for (const auto& [name, value] : ctx_.assignment) point[*f.ring->index_of(name)] = value;
  auto scalar_at = [&](const ParamSeq& s, long i) {
    XPoly v = s.at(i);
    if (v.degree() > 0) throw SchemaError("x-dependent scalar sequence entry");
    return v.coeff(0).eval(point);
  };

  for (long i = 0; i <= top; ++i) beta_.push_back(scalar_at(f.beta, i));
  gamma_.push_back(Rational(1));  // gamma_0 = 1, the SR-2 n = 0 convention
  for (long i = 1; i <= top; ++i) {
    gamma_.push_back(scalar_at(f.gamma, i));
    if (gamma_.back().is_zero())
      throw ConfigError("gamma_" + std::to_string(i) +
                        " vanishes under the assignment (regularity violated)");
  }

  P_ = ttrr(beta_, gamma_, ctx_.n_max + 2);
  P1_ = associated1(beta_, gamma_, ctx_.n_max + 2);

  phi_ = eval_xpoly(f.phi, 0);
  B_ = eval_xpoly(f.B, 0);
  C0_ = eval_xpoly(f.C, 0);
  D0_ = eval_xpoly(f.D, 0);

  // Iterate the coefficient recurrences exactly.
  C_.push_back(C0_);
  D_.push_back(B_);   // D_seq()[0] = D_{-1} = B
  D_.push_back(D0_);  // D_seq()[1] = D_0
  for (long n = 0; n <= ctx_.n_max; ++n) {
    QPoly xb = QPoly::x() - QPoly::constant(beta_at(n));
    QPoly Cn = C_[static_cast<std::size_t>(n)];
    QPoly Dn = D_[static_cast<std::size_t>(n) + 1];
    QPoly Dnm1 = D_[static_cast<std::size_t>(n)];
    C_.push_back(-Cn + (xb * Dn).scaled(Rational(2)));
    QPoly rhs = -phi_ + Dnm1.scaled(gamma_at(n)) - xb * Cn + xb * xb * Dn;
    D_.push_back(rhs.scaled(gamma_at(n + 1).inverse()));
  }
}

Rational OracleSession::beta_at(long n) const { return beta_.at(static_cast<std::size_t>(n)); }

Rational OracleSession::gamma_at(long n) const { return gamma_.at(static_cast<std::size_t>(n)); }

QPoly OracleSession::eval_xpoly(const XPoly& p, long n_value) const {
  std::vector<Rational> point(f_->ring->size(), Rational(0));
  for (const auto& [name, value] : ctx_.assignment) point[*f_->ring->index_of(name)] = value;
  point[f_->nvar()] = Rational(n_value);
  std::vector<Rational> cs;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) cs.push_back(p.coeff(i).eval(point));
  return QPoly(std::move(cs));
}

QPoly OracleSession::instantiate(const XPoly& p, const Branch& branch, long n) const {
  if (!branch.covers(n))
    throw ConfigError("branch " + branch.label() + " does not cover n=" + std::to_string(n));
  return eval_xpoly(p, branch.local(n));
}

CheckReport OracleSession::iterate_agreement() const {
  CheckReport rep;
  for (long n = 1; n <= ctx_.n_max + 1; ++n) {
    QPoly c_closed = eval_xpoly(f_->Cseq.at(n), 0);
    QPoly d_closed = eval_xpoly(f_->Dseq.at(n), 0);
    QPoly dc = C_[static_cast<std::size_t>(n)] - c_closed;
    QPoly dd = D_[static_cast<std::size_t>(n) + 1] - d_closed;
    rep.items.push_back({"C_n closed form", n, dc.is_zero(), dc.degree()});
    rep.items.push_back({"D_n closed form", n, dd.is_zero(), dd.degree()});
  }
  return rep;
}

CheckReport OracleSession::check_relations() const {
  CheckReport rep;
  auto push = [&rep](const char* id, long n, const QPoly& residual) {
    rep.items.push_back({id, n, residual.is_zero(), residual.degree()});
  };
  for (long n = 0; n <= ctx_.n_max; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    const QPoly& Pn = P_[un];
    const QPoly& Pn1 = P_[un + 1];
    const QPoly& Q_n = P1_[un];                              // P^(1)_n
    QPoly Q_nm1 = n == 0 ? QPoly() : P1_[un - 1];            // P^(1)_{n-1}, P^(1)_{-1} = 0
    const QPoly& Cn1 = C_[un + 1];
    const QPoly& Dn = D_[un + 1];
    const QPoly& Dn1 = D_[un + 2];
    QPoly half_sum = (Cn1 + C0_).scaled(Rational(1, 2));
    QPoly half_diff = (Cn1 - C0_).scaled(Rational(1, 2));
    QPoly gD = Dn1.scaled(gamma_at(n + 1));

    // R1: phi (P^(1)_{n-1})' = D_n P^(1)_n - half_diff P^(1)_{n-1} - D_0 P_n
    push("R1", n, phi_ * Q_nm1.derivative() - Dn * Q_n + half_diff * Q_nm1 + D0_ * Pn);
    // R2: phi P_n' = D_n P_{n+1} - half_sum P_n + B P^(1)_{n-1}
    push("R2", n, phi_ * Pn.derivative() - Dn * Pn1 + half_sum * Pn - B_ * Q_nm1);
    // R3: phi (P^(1)_n)' = half_sum P^(1)_n - gamma_{n+1} D_{n+1} P^(1)_{n-1} - D_0 P_{n+1}
    push("R3", n, phi_ * Q_n.derivative() - half_sum * Q_n + gD * Q_nm1 + D0_ * Pn1);
    // R4: phi P_{n+1}' - B P^(1)_n = half_diff P_{n+1} - gamma_{n+1} D_{n+1} P_n
    push("R4", n, phi_ * Pn1.derivative() - B_ * Q_n - half_diff * Pn1 + gD * Pn);

    // S1-S4 with coefficients rebuilt numerically by the level recursion.
    QPoly G0 = QPoly();
    QPoly G1 = B_;
    QPoly H = -gD;
    std::vector<QPoly> M = {-half_diff};
    QPoly phi_pow = phi_;
    std::vector<QPoly> dP = {Pn1};
    for (int k = 1; k <= 4; ++k) dP.push_back(dP.back().derivative());
    for (int level = 1; level <= 4; ++level) {
      QPoly rhs = phi_pow * dP[static_cast<std::size_t>(level)];
      for (int j = 0; j < level; ++j) rhs += M[static_cast<std::size_t>(j)] * dP[static_cast<std::size_t>(j)];
      QPoly residual = G0 * Q_nm1 + G1 * Q_n + H * Pn - rhs;
      push(level == 1   ? "S1"
           : level == 2 ? "S2"
           : level == 3 ? "S3"
                        : "S4",
           n, residual);
      if (level == 4) break;
      QPoly nG0 = phi_ * G0.derivative() - half_diff * G0 - gD * G1 + B_ * H;
      QPoly nG1 = Dn * G0 + half_sum * G1 + phi_ * G1.derivative();
      QPoly nH = -(D0_ * G0) - half_sum * H + phi_ * H.derivative();
      std::vector<QPoly> nM(static_cast<std::size_t>(level) + 1);
      nM[static_cast<std::size_t>(level)] =
          phi_ * M[static_cast<std::size_t>(level - 1)] +
          (phi_pow * phi_.derivative()).scaled(Rational(level));
      for (int j = 1; j < level; ++j)
        nM[static_cast<std::size_t>(j)] =
            phi_ * (M[static_cast<std::size_t>(j)].derivative() + M[static_cast<std::size_t>(j - 1)]);
      nM[0] = phi_ * M[0].derivative() + D0_ * G1 - Dn * H;
      G0 = std::move(nG0);
      G1 = std::move(nG1);
      H = std::move(nH);
      M = std::move(nM);
      phi_pow = phi_pow * phi_;
    }
  }
  return rep;
}

namespace {
std::string ode_id(const OdeResult& ode, bool reduced) {
  std::ostringstream os;
  os << "ode" << ode.order << (reduced ? " reduced" : "") << " (" << ode.branch.label() << ")";
  return os.str();
}
}  // namespace

CheckReport OracleSession::check_ode(const OdeResult& ode) const {
  CheckReport rep;
  const std::string id = ode_id(ode, false);
  for (long n = 0; n <= ctx_.n_max; ++n) {
    if (!ode.branch.covers(n)) continue;
    if (ode.degenerate) {
      bool all0 = true;
      for (const XPoly& c : ode.coeffs) all0 = all0 && instantiate(c, ode.branch, n).is_zero();
      rep.items.push_back({id + " degenerate-coeffs", n, all0, all0 ? -1 : 0});
      continue;
    }
    QPoly residual;
    std::vector<QPoly> dP = {P_[static_cast<std::size_t>(n) + 1]};
    for (int k = 0; k < ode.order; ++k) dP.push_back(dP.back().derivative());
    for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
      int deriv = ode.order - static_cast<int>(i);
      residual += instantiate(ode.coeffs[i], ode.branch, n) * dP[static_cast<std::size_t>(deriv)];
    }
    rep.items.push_back({id, n, residual.is_zero(), residual.degree()});
  }
  return rep;
}

CheckReport OracleSession::check_ode(const ReducedOde& red) const {
  CheckReport rep;
  const std::string id = ode_id(red.ode, true);
  for (long n = 0; n <= ctx_.n_max; ++n) {
    if (!red.ode.branch.covers(n)) continue;
    QPoly residual;
    std::vector<QPoly> dP = {P_[static_cast<std::size_t>(n) + 1]};
    for (int k = 0; k < red.ode.order; ++k) dP.push_back(dP.back().derivative());
    for (std::size_t i = 0; i < red.reduced.size(); ++i) {
      int deriv = red.ode.order - static_cast<int>(i);
      residual +=
          instantiate(red.reduced[i], red.ode.branch, n) * dP[static_cast<std::size_t>(deriv)];
    }
    rep.items.push_back({id, n, residual.is_zero(), residual.degree()});
  }
  return rep;
}

CheckReport OracleSession::check_rsimp() const {
  CheckReport rep;
  QPoly sum = QPoly();  // running sum of D_0..D_n
  for (long n = 0; n <= ctx_.n_max; ++n) {
    const std::size_t un = static_cast<std::size_t>(n);
    sum += D_[un + 1];
    const QPoly& Cn1 = C_[un + 1];
    const QPoly& Dn = D_[un + 1];
    const QPoly& Dn1 = D_[un + 2];
    // The B*D_0 completion vanishes for semiclassical families, where the
    // identity is usually stated; it is forced by D_{-1} = B at n = 0.
    QPoly residual = (Dn * Dn1).scaled(gamma_at(n + 1)) -
                     (Cn1 * Cn1 - C0_ * C0_).scaled(Rational(1, 4)) + phi_ * sum - B_ * D0_;
    rep.items.push_back({"R-simp", n, residual.is_zero(), residual.degree()});
  }
  return rep;
}

CheckReport check_relations(const LHFamily& f, const NumericContext& ctx) {
  return OracleSession(f, ctx).check_relations();
}

CheckReport check_ode(const LHFamily& f, const NumericContext& ctx, const OdeResult& ode) {
  return OracleSession(f, ctx).check_ode(ode);
}

CheckReport check_ode(const LHFamily& f, const NumericContext& ctx, const ReducedOde& red) {
  return OracleSession(f, ctx).check_ode(red);
}

CheckReport check_rsimp(const LHFamily& f, const NumericContext& ctx) {
  return OracleSession(f, ctx).check_rsimp();
}

}  // namespace lh

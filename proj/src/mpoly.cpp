#include "lh/mpoly.hpp"

#include <algorithm>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

MPoly MPoly::constant(RingPtr ring, const Rational& c) {
  MPoly p(std::move(ring));
  if (!c.is_zero()) p.terms_.emplace(Monomial(p.ring_->size(), 0), c);
  return p;
}

MPoly MPoly::variable(RingPtr ring, std::size_t var) {
  MPoly p(std::move(ring));
  Monomial m(p.ring_->size(), 0);
  m.at(var) = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

MPoly MPoly::variable(RingPtr ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw RingMismatchError("unknown indeterminate: " + std::string(name));
  return variable(std::move(ring), *idx);
}

MPoly MPoly::term(RingPtr ring, Monomial m, const Rational& c) {
  MPoly p(std::move(ring));
  if (m.size() != p.ring_->size()) throw RingMismatchError("monomial arity mismatch");
  if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
  return p;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Monomial& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
}

Rational MPoly::constant_value() const {
  if (is_zero()) return Rational(0);
  return terms_.begin()->second;
}

int MPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const Monomial& m = terms_.rbegin()->first;  // graded-lex max has max degree
  unsigned d = 0;
  for (unsigned e : m) d += e;
  return static_cast<int>(d);
}

int MPoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m[var]));
  return d;
}

const std::pair<const Monomial, Rational>& MPoly::leading() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return *terms_.rbegin();
}

Rational MPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::insert_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  require_same_ring(ring_, o.ring_, "MPoly addition");
  for (const auto& [m, c] : o.terms_) insert_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  require_same_ring(ring_, o.ring_, "MPoly subtraction");
  for (const auto& [m, c] : o.terms_) insert_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_same_ring(a.ring_, b.ring_, "MPoly multiplication");
  MPoly r(a.ring_);
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t nv = a.ring_->size();
  Monomial m(nv);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < nv; ++i) m[i] = ma[i] + mb[i];
      r.insert_term(m, ca * cb);
    }
  }
  return r;
}

MPoly MPoly::scaled(const Rational& c) const {
  MPoly r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly acc = constant(ring_, 1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.insert_term(d, c * Rational(static_cast<long>(m[var])));
  }
  return r;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
  require_same_ring(ring_, value.ring_, "MPoly substitution");
  std::vector<MPoly> cs = coeffs_in(var);
  MPoly acc(ring_);
  for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * value + *it;
  return acc;
}

MPoly MPoly::substitute(std::size_t var, const Rational& value) const {
  return substitute(var, constant(ring_, value));
}

Rational MPoly::eval(const std::vector<Rational>& point) const {
  if (point.size() != ring_->size()) throw RingMismatchError("eval point arity mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= point[i].pow(m[i]);
    acc += t;
  }
  return acc;
}

bool operator==(const MPoly& a, const MPoly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Rational MPoly::content() const {
  if (is_zero()) return Rational(0);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  }
  Rational content(num_gcd, den_lcm);
  if (leading().second.sign() < 0) content = -content;
  return content;
}

MPoly MPoly::primitive_part() const {
  if (is_zero()) return *this;
  return scaled(content().inverse());
}

std::vector<MPoly> MPoly::coeffs_in(std::size_t var) const {
  std::vector<MPoly> cs(static_cast<std::size_t>(std::max(0, degree_in(var))) + 1, MPoly(ring_));
  for (const auto& [m, c] : terms_) {
    Monomial base = m;
    unsigned e = base[var];
    base[var] = 0;
    cs[e].insert_term(base, c);
  }
  while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
  return cs;
}

MPoly MPoly::from_coeffs_in(RingPtr ring, std::size_t var, const std::vector<MPoly>& coeffs) {
  MPoly r(std::move(ring));
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    for (const auto& [m, c] : coeffs[e].terms_) {
      Monomial t = m;
      t[var] += static_cast<unsigned>(e);
      r.insert_term(t, c);
    }
  }
  return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
  require_same_ring(ring_, divisor.ring_, "MPoly division");
  if (divisor.is_zero()) return std::nullopt;
  MPoly q(ring_), r = *this;
  const auto& [lm, lc] = divisor.leading();
  const std::size_t nv = ring_->size();
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    Monomial qm(nv);
    bool divides = true;
    for (std::size_t i = 0; i < nv; ++i) {
      if (rm[i] < lm[i]) { divides = false; break; }
      qm[i] = rm[i] - lm[i];
    }
    if (!divides) return std::nullopt;  // exact division impossible
    Rational qc = rc / lc;
    MPoly t = term(ring_, qm, qc);
    q += t;
    r -= t * divisor;
  }
  return q;
}

namespace {

/// Pseudo-remainder of a by b in the variable `var`: lc(b)^(da-db+1) * a mod b.
MPoly pseudo_rem(const MPoly& a, const MPoly& b, std::size_t var) {
  std::vector<MPoly> ra = a.coeffs_in(var);
  std::vector<MPoly> rb = b.coeffs_in(var);
  const MPoly& lb = rb.back();
  int da = static_cast<int>(ra.size()) - 1;
  const int db = static_cast<int>(rb.size()) - 1;
  int steps = da - db + 1;
  while (da >= db && !(ra.size() == 1 && ra[0].is_zero())) {
    MPoly top = ra.back();
    // ra = lb*ra - top * x^(da-db) * rb
    for (auto& c : ra) c = lb * c;
    for (int i = 0; i <= db; ++i) {
      std::size_t k = static_cast<std::size_t>(da - db + i);
      ra[k] -= top * rb[static_cast<std::size_t>(i)];
    }
    ra.pop_back();
    while (ra.size() > 1 && ra.back().is_zero()) ra.pop_back();
    da = static_cast<int>(ra.size()) - 1;
    if (ra.size() == 1 && ra[0].is_zero()) da = -1;
    --steps;
  }
  MPoly rem = MPoly::from_coeffs_in(a.ring(), var, ra);
  // Pad remaining multiplications so the result equals lc(b)^(da0-db+1) * a mod b.
  for (; steps > 0; --steps) rem = rem * lb;
  return rem;
}

/// Content of p with respect to `var`: the (recursive) GCD of its coefficients.
MPoly content_in(const MPoly& p, std::size_t var) {
  MPoly c = MPoly::zero(p.ring());
  for (const MPoly& coeff : p.coeffs_in(var)) {
    c = MPoly::gcd(c, coeff);
    if (c.is_constant() && !c.is_zero() && c.content() == Rational(1)) break;
  }
  return c;
}

/// GCD of primitive polynomials in `var` via the subresultant PRS.
MPoly prs_gcd(MPoly a, MPoly b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  MPoly g = MPoly::constant(a.ring(), 1);
  MPoly h = g;
  while (true) {
    int delta = a.degree_in(var) - b.degree_in(var);
    MPoly r = pseudo_rem(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return MPoly::constant(a.ring(), 1);
    MPoly divisor = g * h.pow(static_cast<unsigned>(delta));
    auto q = r.divide_exact(divisor);
    if (!q) throw std::logic_error("subresultant PRS: inexact division");
    a = b;
    b = *q;
    g = a.coeffs_in(var).back();
    if (delta > 0) {
      auto hn = g.pow(static_cast<unsigned>(delta))
                    .divide_exact(h.pow(static_cast<unsigned>(delta - 1)));
      if (!hn) throw std::logic_error("subresultant PRS: inexact h update");
      h = *hn;
    }
  }
  // Primitive part of the last nonzero remainder w.r.t. var.
  MPoly cont = content_in(b, var);
  auto pp = b.divide_exact(cont);
  if (!pp) throw std::logic_error("subresultant PRS: content does not divide");
  MPoly res = *pp;
  if (res.content().sign() < 0) res = -res;
  return res;
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  require_same_ring(a.ring_, b.ring_, "MPoly gcd");
  auto sign_normalized = [](const MPoly& p) {
    return (!p.is_zero() && p.leading().second.sign() < 0) ? -p : p;
  };
  if (a.is_zero()) return sign_normalized(b);
  if (b.is_zero()) return sign_normalized(a);

  Rational rc = Rational::gcd(a.content(), b.content());
  if (a.is_constant() || b.is_constant()) return constant(a.ring_, rc);

  // Main variable: first ring variable appearing in either operand.
  std::size_t var = 0;
  for (std::size_t i = 0; i < a.ring_->size(); ++i) {
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) { var = i; break; }
  }

  MPoly pa = a.primitive_part();
  MPoly pb = b.primitive_part();
  MPoly ca = content_in(pa, var);
  MPoly cb = content_in(pb, var);
  MPoly cg = gcd(ca, cb);

  MPoly ppa = *pa.divide_exact(ca);
  MPoly ppb = *pb.divide_exact(cb);
  MPoly pg = (ppa.degree_in(var) == 0 || ppb.degree_in(var) == 0)
                 ? constant(a.ring_, 1)
                 : prs_gcd(ppa, ppb, var);

  MPoly result = (cg * pg).scaled(rc);
  if (result.leading().second.sign() < 0) result = -result;
  return result;
}

MPoly MPoly::lcm(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return zero(a.ring());
  MPoly g = gcd(a, b);
  MPoly l = *(a * b).divide_exact(g);
  if (l.leading().second.sign() < 0) l = -l;
  return l;
}

std::string MPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Graded-lex descending.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    bool has_vars = std::any_of(m.begin(), m.end(), [](unsigned e) { return e != 0; });
    bool printed = false;
    if (!a.is_one() || !has_vars) {
      os << a.str();
      printed = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->var_name(i);
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace lh

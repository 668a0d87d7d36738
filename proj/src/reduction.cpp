#include "lh/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

ReducedOde reduce_ode(const OdeResult& ode) {
  if (ode.degenerate)
    throw DegenerateOdeError(
        "all coefficients vanish (semiclassical family); use the semiclassical reductions");
  const RingPtr& ring = ode.coeffs.front().ring();

  // Common denominator across every coefficient, then flatten to MPoly.
  MPoly den = MPoly::constant(ring, 1);
  std::vector<std::pair<MPoly, MPoly>> cleared;  // (numerator, its denominator)
  cleared.reserve(ode.coeffs.size());
  for (const XPoly& c : ode.coeffs) {
    cleared.push_back(c.cleared());
    den = MPoly::lcm(den, cleared.back().second);
  }
  std::vector<MPoly> nums;
  nums.reserve(cleared.size());
  for (auto& [num, d] : cleared) nums.push_back(num * *den.divide_exact(d));

  // GCD of the cleared numerators, smallest first so the running gcd shrinks
  // early.
  std::vector<std::size_t> order(nums.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return nums[a].num_terms() < nums[b].num_terms(); });
  MPoly g = MPoly::zero(ring);
  for (std::size_t i : order) g = MPoly::gcd(g, nums[i]);

  ReducedOde red{ode, RatFun(ring), MPoly::zero(ring), {}};
  red.reduced.reserve(nums.size());
  for (const MPoly& n : nums) red.reduced.push_back(XPoly::from_mpoly(*n.divide_exact(g)));

  // Positive sign on the leading reduced coefficient (highest derivative,
  // highest x power, graded-lex leading term in the remaining variables).
  int sign = 1;
  for (const XPoly& r : red.reduced) {
    if (r.is_zero()) continue;
    sign = r.leading().num().leading().second.sign();
    break;
  }
  if (sign < 0)
    for (XPoly& r : red.reduced) r = -r;
  red.unit = RatFun(MPoly::constant(ring, sign), den);
  red.common = g;
  return red;
}

namespace {

std::string compact(const MPoly& p) {
  // MPoly::str uses spaced separators; golden/latex emission wants tight.
  std::string s = p.str();
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ' ') continue;
    out += s[i];
  }
  return out;
}

bool single_monomial(const MPoly& p) { return p.num_terms() <= 1; }

/// One x-power term of a coefficient: [sign]mag[*prim][/den][*x^k].
struct TermParts {
  int sign = 1;
  std::string body;
};

TermParts render_term(const RatFun& c, std::size_t k, EmitFormat format) {
  TermParts t;
  Rational content = c.num().content();
  t.sign = content.sign();
  Rational mag = content.abs();
  MPoly prim = *c.num().divide_exact(MPoly::constant(c.ring(), content));
  const MPoly& den = c.den();
  bool prim_is_one = prim.is_constant() && prim.constant_value().is_one();

  std::vector<std::string> factors;
  if (format == EmitFormat::Latex) {
    std::string num_part;
    if (!mag.is_one() || (prim_is_one && k == 0)) num_part = mag.num().get_str();
    if (!prim_is_one)
      num_part += (num_part.empty() ? "" : " ") +
                  (single_monomial(prim) ? compact(prim) : "\\left(" + compact(prim) + "\\right)");
    std::string den_part;
    if (!mag.is_integer()) den_part = mag.den().get_str();
    if (!(den.is_constant() && den.constant_value().is_one()))
      den_part += (den_part.empty() ? "" : " ") +
                  (single_monomial(den) ? compact(den) : "\\left(" + compact(den) + "\\right)");
    std::string coeff = den_part.empty()
                            ? num_part
                            : "\\frac{" + (num_part.empty() ? "1" : num_part) + "}{" + den_part + "}";
    if (!coeff.empty()) factors.push_back(coeff);
    if (k == 1) factors.push_back("x");
    if (k > 1) factors.push_back("x^{" + std::to_string(k) + "}");
    t.body = factors.empty() ? "1" : factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) t.body += " " + factors[i];
    return t;
  }

  std::string coeff;
  if (!mag.is_one() || (prim_is_one && k == 0)) coeff = mag.str();
  if (!prim_is_one) {
    if (!coeff.empty()) coeff += "*";
    coeff += single_monomial(prim) ? compact(prim) : "(" + compact(prim) + ")";
  }
  if (!(den.is_constant() && den.constant_value().is_one()))
    coeff += "/" + (single_monomial(den) ? compact(den) : "(" + compact(den) + ")");
  if (!coeff.empty()) factors.push_back(coeff);
  if (k == 1) factors.push_back("x");
  if (k > 1) factors.push_back("x^" + std::to_string(k));
  if (factors.empty()) {
    t.body = "1";
    return t;
  }
  t.body = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) t.body += "*" + factors[i];
  return t;
}

}  // namespace

std::string emit_xpoly(const XPoly& p, EmitFormat format) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    if (p.coeff(k).is_zero()) continue;
    TermParts t = render_term(p.coeff(k), k, format);
    if (first) {
      if (t.sign < 0) os << "-";
      first = false;
    } else {
      os << (t.sign < 0 ? " - " : " + ");
    }
    os << t.body;
  }
  return os.str();
}

namespace {

/// "P", "P'", ..., highest derivative first, order <= 4.
std::string p_name(int deriv, EmitFormat format) {
  if (format == EmitFormat::Latex) {
    if (deriv == 0) return "P_{n+1}";
    if (deriv <= 2) return "P_{n+1}" + std::string(static_cast<std::size_t>(deriv), '\'');
    return "P_{n+1}^{(" + std::to_string(deriv) + ")}";
  }
  return "P" + std::string(static_cast<std::size_t>(deriv), '\'');
}

std::string equation_line(const std::vector<XPoly>& coeffs, int order, EmitFormat format) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const XPoly& c = coeffs[i];
    if (c.is_zero()) continue;
    int deriv = order - static_cast<int>(i);
    std::string s = emit_xpoly(c, format);
    std::string part;
    bool is_one = (s == "1");
    bool is_minus_one = (s == "-1");
    bool multi = s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
    std::string mul = format == EmitFormat::Latex ? " \\, " : "*";
    if (is_one)
      part = p_name(deriv, format);
    else if (is_minus_one)
      part = "-" + p_name(deriv, format);
    else if (multi)
      part = (format == EmitFormat::Latex ? "\\left(" + s + "\\right)" : "(" + s + ")") + mul +
             p_name(deriv, format);
    else
      part = s + mul + p_name(deriv, format);
    if (first) {
      os << part;
      first = false;
    } else if (part.rfind('-', 0) == 0) {
      os << " - " << part.substr(1);
    } else {
      os << " + " << part;
    }
  }
  if (first) return "0 = 0";
  os << " = 0";
  return os.str();
}

const char* kOdeCoeffNames[] = {"A", "B", "C", "D", "E"};

std::string header_names(int order) {
  // order 4 -> A..E, order 3 -> B..E, order 2 -> C..E as in the source paper's
  // naming of coefficients by derivative slot.
  return std::string(kOdeCoeffNames[4 - order]);
}

}  // namespace

std::string emit(const StructureRelation& rel, EmitFormat format) {
  std::ostringstream os;
  const std::string nl = "\n";
  auto line = [&](const std::string& name, const XPoly& p) {
    if (format == EmitFormat::Latex)
      os << name << " &= " << emit_xpoly(p, format) << " \\\\" << nl;
    else
      os << "  " << name << " = " << emit_xpoly(p, format) << nl;
  };
  int k = rel.level;
  if (format == EmitFormat::Latex) {
    os << "% structure relation " << k << nl << "\\begin{align*}" << nl;
    line("G_{0," + std::to_string(k) + "}(x;n)", rel.G0);
    line("G_{1," + std::to_string(k) + "}(x;n)", rel.G1);
    line("H_{" + std::to_string(k) + "}(x;n)", rel.H);
    line("\\Phi^{" + std::to_string(k) + "}(x)", rel.phi_power);
    for (std::size_t j = rel.M.size(); j-- > 0;)
      line("M_{" + std::to_string(j) + "," + std::to_string(k) + "}(x;n)", rel.M[j]);
    os << "\\end{align*}" << nl;
  } else {
    os << "structure relation " << k << nl;
    line("G0", rel.G0);
    line("G1", rel.G1);
    line("H", rel.H);
    line("phi^" + std::to_string(k), rel.phi_power);
    for (std::size_t j = rel.M.size(); j-- > 0;) line("M" + std::to_string(j), rel.M[j]);
  }
  return os.str();
}

std::string emit(const OdeResult& ode, EmitFormat format) {
  std::ostringstream os;
  const std::string nl = "\n";
  if (format == EmitFormat::Latex) {
    os << "% order " << ode.order << " differential equation, " << ode.branch.label() << nl;
    if (ode.degenerate) {
      os << "% degenerate: every coefficient is identically zero" << nl;
      return os.str();
    }
    os << "\\begin{align*}" << nl;
    for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
      char name = header_names(ode.order)[0] + static_cast<char>(i);
      os << "\\mathcal{" << name << "}(x;n) &= " << emit_xpoly(ode.coeffs[i], format) << " \\\\"
         << nl;
    }
    os << "\\end{align*}" << nl;
    os << "% " << equation_line(ode.coeffs, ode.order, format) << nl;
    return os.str();
  }
  os << "order " << ode.order << " differential equation (" << ode.branch.label() << ")" << nl;
  if (ode.degenerate) {
    os << "  degenerate: every coefficient is identically zero" << nl;
    os << "  0 = 0" << nl;
    return os.str();
  }
  for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
    char name = header_names(ode.order)[0] + static_cast<char>(i);
    os << "  " << name << " = " << emit_xpoly(ode.coeffs[i], format) << nl;
  }
  os << "  " << equation_line(ode.coeffs, ode.order, format) << nl;
  return os.str();
}

std::string emit(const ReducedOde& red, EmitFormat format) {
  std::ostringstream os;
  const std::string nl = "\n";
  XPoly common_x = XPoly::from_mpoly(red.common).scaled(red.unit);
  if (format == EmitFormat::Latex) {
    os << "% reduced order " << red.ode.order << " differential equation, "
       << red.ode.branch.label() << nl;
    os << "% common factor c(x;n) = " << emit_xpoly(common_x, format) << nl;
    os << "\\begin{align*}" << nl;
    for (std::size_t i = 0; i < red.reduced.size(); ++i) {
      char name = header_names(red.ode.order)[0] + static_cast<char>(i);
      os << "\\widehat{\\mathcal{" << name << "}}(x;n) &= " << emit_xpoly(red.reduced[i], format)
         << " \\\\" << nl;
    }
    os << "\\end{align*}" << nl;
    os << "% " << equation_line(red.reduced, red.ode.order, format) << nl;
    return os.str();
  }
  os << "reduced order " << red.ode.order << " differential equation ("
     << red.ode.branch.label() << ")" << nl;
  os << "  common factor c = " << emit_xpoly(common_x, format) << nl;
  for (std::size_t i = 0; i < red.reduced.size(); ++i) {
    char name = header_names(red.ode.order)[0] + static_cast<char>(i);
    os << "  " << name << "^ = " << emit_xpoly(red.reduced[i], format) << nl;
  }
  os << "  " << equation_line(red.reduced, red.ode.order, format) << nl;
  return os.str();
}

}  // namespace lh

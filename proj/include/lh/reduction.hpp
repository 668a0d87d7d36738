#pragma once

#include "lh/derivation.hpp"

namespace lh {

/// Differential equation with the greatest common factor of its coefficients
/// pulled out: original coeff_k = (unit * common) * reduced_k exactly, where
/// `common` is an integer-primitive MPoly with positive leading coefficient
/// and `unit` is an x-free RatFun.  The reduced coefficients are
/// denominator-free and their multivariate GCD is a unit; the leading reduced
/// coefficient (highest derivative, highest x power) has a positive leading
/// term under graded-lex order.
struct ReducedOde {
  OdeResult ode;
  RatFun unit;
  MPoly common;
  std::vector<XPoly> reduced;
};

/// Extracts the common factor c(x;n) = unit * common; throws
/// DegenerateOdeError on an all-zero equation (semiclassical fourth-order
/// output of build_ode4; use the semiclassical reductions instead).
ReducedOde reduce_ode(const OdeResult& ode);

enum class EmitFormat { Text, Latex };

/// Deterministic renderings: identical inputs give byte-identical output.
std::string emit(const StructureRelation& rel, EmitFormat format);
std::string emit(const OdeResult& ode, EmitFormat format);
std::string emit(const ReducedOde& red, EmitFormat format);

/// Coefficient rendering used by all emitters: canonical x-basis, rational
/// content extracted per x power, n/parameter parts grouped.
std::string emit_xpoly(const XPoly& p, EmitFormat format);

}  // namespace lh

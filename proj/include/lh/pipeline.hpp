#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lh/oracle.hpp"
#include "lh/reduction.hpp"

namespace lh {

struct RunConfig {
  std::string family_path;
  std::string command;  // derive | reduce | verify | class | emit | all
  std::string branch = "all";
  int n_max = 8;
  std::map<std::string, Rational> assign_overrides;
  EmitFormat format = EmitFormat::Text;
  std::string out_dir = "out";
};

/// One derived equation, keyed for artifact naming and verification.
struct NamedOde {
  std::string name;  // "ode4", "sc2_formI", "sc2_formII", "sc3", "sc4", "wronskian", "classical"
  OdeResult ode;
};

struct DerivedSet {
  std::vector<std::pair<Branch, std::array<StructureRelation, 4>>> relations;
  std::vector<NamedOde> odes;
  std::vector<std::pair<std::string, ReducedOde>> reduced;  // same naming, reducible odes only
};

/// Steps 2-4 of the derivation pipeline on every requested branch (generic
/// branches plus concrete low-index instances); "all" selects every branch.
DerivedSet derive_all(const LHFamily& f, const std::string& branch_selector = "all");

/// Step 5: greatest-common-factor reduction of every non-degenerate equation.
void reduce_all(DerivedSet& set);

/// Steps 6-7 plus the symbolic SR check: full verification report.
struct VerifyOutcome {
  SrReport symbolic;
  CheckReport oracle;
  bool ok() const { return symbolic.all_zero() && oracle.all_zero(); }
};
VerifyOutcome verify_all(const LHFamily& f, const DerivedSet& set, const NumericContext& ctx);

/// Filesystem tag for a branch ("n", "2n+1", "n0", ...).
std::string branch_tag(const Branch& b);

/// Runs one CLI command; returns the process exit code
/// (0 ok, 1 verification failure, 2 configuration/parse error).
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace lh

#include "lh/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lh/errors.hpp"

namespace lh {

namespace fs = std::filesystem;

std::string branch_tag(const Branch& b) {
  if (b.concrete()) return "n" + std::to_string(b.residue);
  if (b.modulus == 1) return "n";
  if (b.residue == 0) return std::to_string(b.modulus) + "n";
  return std::to_string(b.modulus) + "n+" + std::to_string(b.residue);
}

DerivedSet derive_all(const LHFamily& f, const std::string& branch_selector) {
  std::vector<Branch> branches;
  for (const Branch& b : derivation_branches(f)) {
    if (branch_selector != "all" && std::to_string(b.residue) != branch_selector) continue;
    branches.push_back(b);
  }
  if (branch_selector == "all") {
    for (long idx : exceptional_indices(f)) branches.push_back(Branch{static_cast<int>(idx), 0, idx});
  }
  if (branches.empty()) throw ConfigError("branch selector matches no derivation branch");

  DerivedSet set;
  for (const Branch& br : branches) {
    auto rels = build_relations(f, br);
    set.odes.push_back({"ode4", build_ode4(rels, f, br)});
    if (f.is_semiclassical()) {
      set.odes.push_back({"sc2_formI", build_semiclassical_ode2(f, br, ScForm::I)});
      set.odes.push_back({"sc2_formII", build_semiclassical_ode2(f, br, ScForm::II)});
      set.odes.push_back({"sc3", build_semiclassical_ode34(f, br, 3)});
      set.odes.push_back({"sc4", build_semiclassical_ode34(f, br, 4)});
      set.odes.push_back({"wronskian", build_wronskian_form(f, br)});
      try {
        set.odes.push_back({"classical", build_classical_ode(f, br)});
      } catch (const ClassicalRequiredError&) {
        // semiclassical but not classical; nothing to emit
      }
    }
    set.relations.emplace_back(br, std::move(rels));
  }
  return set;
}

void reduce_all(DerivedSet& set) {
  set.reduced.clear();
  for (const NamedOde& n : set.odes) {
    if (n.ode.degenerate) continue;
    set.reduced.emplace_back(n.name, reduce_ode(n.ode));
  }
}

VerifyOutcome verify_all(const LHFamily& f, const DerivedSet& set, const NumericContext& ctx) {
  VerifyOutcome out;
  out.symbolic = verify_sr_recurrences(f);
  OracleSession session(f, ctx);
  out.oracle.append(session.iterate_agreement());
  out.oracle.append(session.check_relations());
  out.oracle.append(session.check_rsimp());
  for (const NamedOde& n : set.odes) out.oracle.append(session.check_ode(n.ode));
  for (const auto& [name, red] : set.reduced) out.oracle.append(session.check_ode(red));
  return out;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string ext_of(EmitFormat f) { return f == EmitFormat::Text ? ".txt" : ".tex"; }

fs::path family_dir(const RunConfig& cfg, const LHFamily& f) {
  fs::path dir = fs::path(cfg.out_dir) / f.name;
  fs::create_directories(dir);
  return dir;
}

void write_derive_artifacts(const RunConfig& cfg, const LHFamily& f, const DerivedSet& set) {
  fs::path dir = family_dir(cfg, f);
  for (const auto& [br, rels] : set.relations) {
    std::ostringstream os;
    os << "family " << f.name << ", " << br.label() << "\n";
    for (const StructureRelation& r : rels) os << emit(r, cfg.format);
    write_file(dir / ("relations." + branch_tag(br) + ext_of(cfg.format)), os.str());
  }
  for (const NamedOde& n : set.odes) {
    write_file(dir / (n.name + "." + branch_tag(n.ode.branch) + ext_of(cfg.format)),
               emit(n.ode, cfg.format));
  }
}

void write_reduce_artifacts(const RunConfig& cfg, const LHFamily& f, const DerivedSet& set) {
  fs::path dir = family_dir(cfg, f);
  for (const auto& [name, red] : set.reduced) {
    write_file(dir / ("reduced_" + name + "." + branch_tag(red.ode.branch) + ext_of(cfg.format)),
               emit(red, cfg.format));
  }
}

void write_verify_report(const RunConfig& cfg, const LHFamily& f, const VerifyOutcome& v) {
  fs::path dir = family_dir(cfg, f);
  std::ostringstream os;
  os << "{\n  \"family\": \"" << f.name << "\",\n  \"symbolic_sr\": [";
  for (std::size_t i = 0; i < v.symbolic.rows.size(); ++i) {
    const SrRow& r = v.symbolic.rows[i];
    os << (i ? "," : "") << "\n    {\"where\": \"" << r.where << "\", \"relation\": \""
       << r.relation << "\", \"zero\": " << (r.zero ? "true" : "false") << "}";
  }
  os << "\n  ],\n  \"oracle\": " << v.oracle.to_json() << ",\n  \"all_zero\": "
     << (v.ok() ? "true" : "false") << "\n}\n";
  write_file(dir / "verify_report.json", os.str());
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    LHFamily f = load_family_file(cfg.family_path);

    if (cfg.command == "class") {
      ClassReport r = class_degrees(f);
      out << "family " << f.name << "\n";
      out << "  deg phi = " << r.deg_phi << "\n";
      out << "  deg psi = " << (r.deg_psi ? std::to_string(*r.deg_psi) : "-inf (psi = 0)")
          << "\n";
      out << "  deg B   = " << (r.deg_B ? std::to_string(*r.deg_B) : "-inf (B = 0)") << "\n";
      out << "  s       = " << r.s << "\n";
      if (f.is_semiclassical()) out << "  semiclassical (B = 0)\n";
      return 0;
    }

    DerivedSet set = derive_all(f, cfg.branch);
    if (cfg.command == "derive") {
      write_derive_artifacts(cfg, f, set);
      out << "derived " << set.relations.size() << " branch(es), " << set.odes.size()
          << " equation(s) -> " << (fs::path(cfg.out_dir) / f.name).string() << "\n";
      return 0;
    }

    reduce_all(set);
    if (cfg.command == "reduce") {
      write_reduce_artifacts(cfg, f, set);
      out << "reduced " << set.reduced.size() << " equation(s) -> "
          << (fs::path(cfg.out_dir) / f.name).string() << "\n";
      return 0;
    }

    if (cfg.command == "emit") {
      write_derive_artifacts(cfg, f, set);
      write_reduce_artifacts(cfg, f, set);
      out << "emitted artifacts -> " << (fs::path(cfg.out_dir) / f.name).string() << "\n";
      return 0;
    }

    if (cfg.command == "verify" || cfg.command == "all") {
      NumericContext ctx = make_context(f, cfg.assign_overrides, cfg.n_max);
      VerifyOutcome v = verify_all(f, set, ctx);
      if (cfg.command == "all") {
        write_derive_artifacts(cfg, f, set);
        write_reduce_artifacts(cfg, f, set);
      }
      write_verify_report(cfg, f, v);
      for (const SrRow& r : v.symbolic.rows)
        if (!r.zero)
          out << "SR FAIL " << r.where << " " << r.relation << ": residual " << r.residual
              << "\n";
      out << "symbolic SR: " << (v.symbolic.all_zero() ? "all zero" : "FAILURES") << " ("
          << v.symbolic.rows.size() << " checks)\n";
      out << "oracle: " << v.oracle.summary() << "\n";
      out << (v.ok() ? "VERIFIED" : "VERIFICATION FAILED") << "\n";
      return v.ok() ? 0 : 1;
    }

    err << "unknown command '" << cfg.command << "'\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    err << "family file error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace lh

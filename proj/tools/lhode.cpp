#include <iostream>

#include "CLI11.hpp"
#include "lh/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lhode: structure relations and differential equations for Laguerre-Hahn "
               "orthogonal polynomial families"};
  app.require_subcommand(1);

  lh::RunConfig cfg;
  std::vector<std::string> assigns;
  std::string format = "text";

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--family", cfg.family_path, "family definition JSON file")->required();
    sub->add_option("--branch", cfg.branch, "branch selector: all or a residue (default all)");
    sub->add_option("--n-max", cfg.n_max, "verification index range (default 8)");
    sub->add_option("--assign", assigns, "parameter assignment name=p/q (repeatable)");
    sub->add_option("--format", format, "output format: text or latex");
    if (needs_out) sub->add_option("--out", cfg.out_dir, "artifact directory (default ./out)");
  };

  for (const char* name : {"derive", "reduce", "verify", "class", "emit", "all"}) {
    CLI::App* sub = app.add_subcommand(
        name, std::string("run the '") + name + "' step of the pipeline");
    add_common(sub, std::string(name) != "class");
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  if (format == "latex") {
    cfg.format = lh::EmitFormat::Latex;
  } else if (format != "text") {
    std::cerr << "unknown format '" << format << "'\n";
    return 2;
  }
  for (const std::string& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--assign expects name=p/q, got '" << a << "'\n";
      return 2;
    }
    auto val = lh::Rational::parse(a.substr(eq + 1));
    if (!val) {
      std::cerr << "--assign value '" << a.substr(eq + 1) << "' is not a rational\n";
      return 2;
    }
    cfg.assign_overrides[a.substr(0, eq)] = *val;
  }

  return lh::run_command(cfg, std::cout, std::cerr);
}

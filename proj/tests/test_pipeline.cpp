#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lh/pipeline.hpp"
#include "util.hpp"

using namespace lh;
using lh::test::family_path;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::path(LH_BUILD_DIR) / "test_out" / tag;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run(const RunConfig& cfg, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int rc = run_command(cfg, out, err);
  if (out_text) *out_text = out.str() + err.str();
  return rc;
}

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> m;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) m[fs::relative(e.path(), root).string()] = slurp(e.path());
  return m;
}

}  // namespace

TEST_CASE("class command") {
  RunConfig cfg;
  cfg.command = "class";
  cfg.family_path = family_path("hermite_case1");
  std::string text;
  CHECK(run(cfg, &text) == 0);
  CHECK(text.find("s       = 0") != std::string::npos);

  cfg.family_path = family_path("semiclassical_class1");
  CHECK(run(cfg, &text) == 0);
  CHECK(text.find("s       = 1") != std::string::npos);
  CHECK(text.find("semiclassical") != std::string::npos);

  cfg.family_path = family_path("hermite_classical");
  CHECK(run(cfg, &text) == 0);
  CHECK(text.find("s       = 0") != std::string::npos);
  CHECK(text.find("semiclassical (B = 0)") != std::string::npos);
}

TEST_CASE("derive writes the expected artifacts") {
  RunConfig cfg;
  cfg.command = "derive";
  cfg.family_path = family_path("hermite_classical");
  cfg.out_dir = fresh_dir("derive_hc").string();
  CHECK(run(cfg) == 0);
  fs::path dir = fs::path(cfg.out_dir) / "hermite_classical";
  CHECK(fs::exists(dir / "relations.n.txt"));
  CHECK(fs::exists(dir / "ode4.n.txt"));  // degeneracy notice
  CHECK(slurp(dir / "ode4.n.txt").find("degenerate") != std::string::npos);
  CHECK(fs::exists(dir / "sc2_formI.n.txt"));
  CHECK(fs::exists(dir / "sc2_formII.n.txt"));
  CHECK(fs::exists(dir / "sc3.n.txt"));
  CHECK(fs::exists(dir / "sc4.n.txt"));
  CHECK(fs::exists(dir / "wronskian.n.txt"));
  CHECK(fs::exists(dir / "classical.n.txt"));
  CHECK(fs::exists(dir / "relations.n0.txt"));  // exceptional index instance

  // section-7 family: two parity branches
  cfg.family_path = family_path("semiclassical_class1");
  cfg.out_dir = fresh_dir("derive_sc").string();
  CHECK(run(cfg) == 0);
  fs::path d7 = fs::path(cfg.out_dir) / "semiclassical_class1";
  CHECK(fs::exists(d7 / "sc2_formI.2n.txt"));
  CHECK(fs::exists(d7 / "sc2_formI.2n+1.txt"));
  CHECK(fs::exists(d7 / "sc4.2n+1.txt"));
  CHECK(!fs::exists(d7 / "classical.2n.txt"));  // deg phi = 3: not classical
}

TEST_CASE("verify succeeds on all bundled families") {
  for (const char* name :
       {"hermite_case1", "hermite_case2", "hermite_classical", "semiclassical_class1"}) {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.family_path = family_path(name);
    cfg.out_dir = fresh_dir(std::string("verify_") + name).string();
    std::string text;
    INFO(name, ": ", text);
    CHECK(run(cfg, &text) == 0);
    CHECK(text.find("VERIFIED") != std::string::npos);
    CHECK(fs::exists(fs::path(cfg.out_dir) / name / "verify_report.json"));
  }
}

TEST_CASE("verify fails with exit 1 on corrupted data") {
  fs::path dir = fresh_dir("verify_bad");
  fs::path bad = dir / "bad_family.json";
  {
    std::ofstream out(bad);
    out << R"json({
      "name": "bad_family", "parameters": [],
      "phi": "1", "B": "0", "C": "-2*x", "D": "-2",
      "beta": {"branches": [{"residue": 0, "modulus": 1, "min_index": 0, "expr": "0"}]},
      "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "n/2"}]},
      "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
      "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "2"}]}
    })json";
  }
  RunConfig cfg;
  cfg.command = "verify";
  cfg.family_path = bad.string();
  cfg.out_dir = (dir / "out").string();
  std::string text;
  CHECK(run(cfg, &text) == 1);
  CHECK(text.find("FAILED") != std::string::npos);
}

TEST_CASE("missing assignments give a configuration error (exit 2)") {
  fs::path dir = fresh_dir("verify_nodef");
  fs::path nodef = dir / "nodef.json";
  {
    std::ofstream out(nodef);
    out << R"json({
      "name": "nodef", "parameters": ["rho"],
      "phi": "1", "B": "0", "C": "-2*x", "D": "-2",
      "beta": {"branches": [{"residue": 0, "modulus": 1, "min_index": 0, "expr": "0"}]},
      "gamma": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "n/2"}]},
      "C_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2*x"}]},
      "D_seq": {"branches": [{"residue": 0, "modulus": 1, "min_index": 1, "expr": "-2"}]}
    })json";
  }
  RunConfig cfg;
  cfg.command = "verify";
  cfg.family_path = nodef.string();
  cfg.out_dir = (dir / "out").string();
  CHECK(run(cfg) == 2);
  // an override fixes it
  cfg.assign_overrides = {{"rho", Rational(2)}};
  CHECK(run(cfg) == 0);

  RunConfig missing;
  missing.command = "derive";
  missing.family_path = (dir / "absent.json").string();
  CHECK(run(missing) == 2);
}

TEST_CASE("artifacts are byte-identical across runs and 'all' equals the composition") {
  for (const char* name : {"hermite_case2", "hermite_classical"}) {
    RunConfig all1;
    all1.command = "all";
    all1.family_path = family_path(name);
    all1.out_dir = fresh_dir(std::string("all1_") + name).string();
    REQUIRE(run(all1) == 0);

    RunConfig all2 = all1;
    all2.out_dir = fresh_dir(std::string("all2_") + name).string();
    REQUIRE(run(all2) == 0);
    CHECK(tree_bytes(all1.out_dir) == tree_bytes(all2.out_dir));

    RunConfig steps = all1;
    steps.out_dir = fresh_dir(std::string("steps_") + name).string();
    for (const char* cmd : {"derive", "reduce", "verify", "emit"}) {
      steps.command = cmd;
      REQUIRE(run(steps) == 0);
    }
    CHECK(tree_bytes(all1.out_dir) == tree_bytes(steps.out_dir));
  }
}

TEST_CASE("branch selector") {
  RunConfig cfg;
  cfg.command = "derive";
  cfg.family_path = family_path("semiclassical_class1");
  cfg.branch = "1";
  cfg.out_dir = fresh_dir("branch_sel").string();
  CHECK(run(cfg) == 0);
  fs::path d = fs::path(cfg.out_dir) / "semiclassical_class1";
  CHECK(fs::exists(d / "sc2_formI.2n+1.txt"));
  CHECK(!fs::exists(d / "sc2_formI.2n.txt"));
  cfg.branch = "7";
  CHECK(run(cfg) == 2);
}

TEST_CASE("latex format artifacts") {
  RunConfig cfg;
  cfg.command = "derive";
  cfg.family_path = family_path("hermite_classical");
  cfg.format = EmitFormat::Latex;
  cfg.out_dir = fresh_dir("latex").string();
  CHECK(run(cfg) == 0);
  fs::path d = fs::path(cfg.out_dir) / "hermite_classical";
  CHECK(fs::exists(d / "relations.n.tex"));
  CHECK(slurp(d / "relations.n.tex").find("\\begin{align*}") != std::string::npos);
}

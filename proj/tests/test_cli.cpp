#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fracneumann/commands.hpp"
#include "fracneumann/config.hpp"
#include "support.hpp"

using namespace fracneumann;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text) {
  std::ofstream(dir / name) << text << "output.dir = " << (dir / "out").string() << "\n";
  return dir / name;
}

int run_cfg(const fs::path& cfg, const std::string& command, std::string* err = nullptr) {
  std::ostringstream log, errors;
  const int code = run(command, cfg.string(), log, errors);
  if (err) *err = errors.str();
  return code;
}

}  // namespace

TEST_CASE("assemble writes diagnostics and the mesh") {
  const auto dir = testing::scratch_dir("cli_assemble");
  const auto cfg = write_config(dir, "a.cfg", "mesh.n = 8\nmesh.r_ext = 5\n");
  CHECK(run_cfg(cfg, "assemble") == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "assemble.json"));
  CHECK(j["mesh"]["n"] == 8);
  CHECK(j["config"]["mesh.n"] == "8");
  CHECK(std::abs(j["checks"]["seminorm_constant"].get<double>()) < 1e-12);
  CHECK(fs::exists(dir / "out" / "mesh.csv"));
}

TEST_CASE("input errors exit with status 1") {
  const auto dir = testing::scratch_dir("cli_errors");
  std::string err;
  CHECK(run_cfg(write_config(dir, "u.cfg", "mesh.size = 8\n"), "assemble", &err) == kExitInput);
  CHECK(err.find("unknown key") != std::string::npos);
  CHECK(run_cfg(write_config(dir, "s.cfg", "mesh.n = 8\n"), "constants", &err) == kExitInput);
  CHECK(err.find("seed") != std::string::npos);
  CHECK(run_cfg(write_config(dir, "b.cfg", "mesh.n = 8\n"), "bogus", &err) == kExitInput);
  CHECK(run_cfg(dir / "missing.cfg", "assemble", &err) == kExitInput);
}

TEST_CASE("certify with delta <= epsilon kappa names the violated hypothesis") {
  const auto dir = testing::scratch_dir("cli_kappa");
  const auto cfg = write_config(dir, "k.cfg",
                                "mesh.n = 8\nmesh.r_ext = 10\ncertify.case = case2\ncertify.delta = 1\n"
                                "certify.epsilon = 1\nnonlinearity.type = polynomial\nnonlinearity.coeffs = 1,0,0,1\n"
                                "constants.c1 = 1\nconstants.cq = 1\n");
  std::string err;
  CHECK(run_cfg(cfg, "certify", &err) == kExitInput);
  CHECK(err.find("violated hypothesis δ > εκ") != std::string::npos);
}

TEST_CASE("a failing hypothesis exits with status 2 and still writes the certificate") {
  const auto dir = testing::scratch_dir("cli_fail");
  const auto cfg = write_config(dir, "f.cfg",
                                "mesh.n = 8\nmesh.r_ext = 10\ncertify.case = case2\ncertify.delta = 1.5\n"
                                "certify.epsilon = 1\nnonlinearity.type = polynomial\nnonlinearity.coeffs = 0.01\n"
                                "constants.c1 = 1\nconstants.cq = 1\n");
  CHECK(run_cfg(cfg, "certify") == kExitHypothesis);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "certificate.json"));
  CHECK(j["certificate"]["certified"] == false);
  CHECK(j["certificate"]["hypotheses"]["Bh2"]["pass"] == false);
}

TEST_CASE("constants are byte-identical across runs with the same seed") {
  const auto dir = testing::scratch_dir("cli_constants");
  const auto cfg = write_config(dir, "c.cfg", "mesh.n = 8\nmesh.r_ext = 10\nseed = 3\nconstants.q = 1,3\nconstants.starts = 4\n");
  REQUIRE(run_cfg(cfg, "constants") == kExitOk);
  const std::string first = slurp(dir / "out" / "constants.json");
  REQUIRE(run_cfg(cfg, "constants") == kExitOk);
  CHECK(slurp(dir / "out" / "constants.json") == first);
  const auto j = nlohmann::json::parse(first);
  CHECK(j["cq"]["1"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(!j.contains("c"));
  // re-run from the report itself
  fs::copy_file(dir / "out" / "constants.json", dir / "report.json");
  REQUIRE(run_cfg(dir / "report.json", "constants") == kExitOk);
  CHECK(slurp(dir / "out" / "constants.json") == first);
}

TEST_CASE("Case I constants include c") {
  const auto dir = testing::scratch_dir("cli_case1");
  const auto cfg = write_config(dir, "c.cfg", "mesh.n = 8\nmesh.r_ext = 10\nparams.s = 0.8\nseed = 3\nconstants.q = 2\nconstants.starts = 3\n");
  REQUIRE(run_cfg(cfg, "constants") == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "constants.json"));
  CHECK(j["c"].get<double>() >= 1.0);
  CHECK(j["c_converged"] == true);
}

TEST_CASE("example31 end to end on a small mesh") {
  const auto dir = testing::scratch_dir("cli_example");
  const auto cfg = write_config(dir, "e.cfg",
                                "mesh.n = 16\nmesh.r_ext = 40\nseed = 11\nnonlinearity.type = example31\n"
                                "constants.starts = 4\n");
  REQUIRE(run_cfg(cfg, "example31") == kExitOk);
  for (const char* f : {"example31_constants.json", "example31_certificate.json", "example31_solve.json"})
    CHECK(fs::exists(dir / "out" / f));
  const std::string solve = slurp(dir / "out" / "example31_solve.json");
  const auto j = nlohmann::json::parse(solve);
  CHECK(!j["solve"].contains("wall_seconds"));
  for (const auto& p : j["solve"]["points"]) CHECK(p["residual"].get<double>() <= 1e-6);
  REQUIRE(run_cfg(cfg, "example31") == kExitOk);
  CHECK(slurp(dir / "out" / "example31_solve.json") == solve);
}

TEST_CASE("solve with an explicit lambda") {
  const auto dir = testing::scratch_dir("cli_solve");
  const auto cfg = write_config(dir, "s.cfg",
                                "mesh.n = 8\nmesh.r_ext = 10\nseed = 2\nnonlinearity.type = cosine\n"
                                "solve.lambda = 0.3\nsolve.starts = 4\nreport.timing = true\n");
  REQUIRE(run_cfg(cfg, "solve") == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "solve.json"));
  CHECK(j["solve"]["found"].get<int>() >= 1);
  CHECK(j["solve"].contains("wall_seconds"));
  CHECK(fs::exists(dir / "out" / "solution_0.csv"));
}

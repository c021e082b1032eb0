#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsharm/config.hpp"
#include "lsharm/errors.hpp"
#include <cmath>

#include "lsharm/runner.hpp"

using namespace lsharm;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LSHARM_CLI_PATH) + " " + args +
                          " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config parsing round-trips and rejects unknown keys") {
  const std::string text = R"(# benchmark block
version = 1
scenario = shifted-sphere
wavenumber = 1.0
band = 127
radius = 4.0
intervals = 16
interp_order = 2
m_inc = 3
refractive_index = 2
scatterer_radius = 1
offset = 2
gmres_tol = 1e-10
gmres_max_iter = 300
gmres_restart = 50
reference = exact
sweep = intervals
sweep_values = 16, 32, 64
output_dir = out/table5
threads = 2
)";
  const RunConfig cfg = RunConfig::parse(text);
  CHECK(cfg.scenario == ScenarioKind::ShiftedSphere);
  CHECK(cfg.band == 127);
  CHECK(cfg.sweep_values == std::vector<int>{16, 32, 64});
  CHECK(cfg.threads == 2);

  // serialize -> parse -> serialize is a fixed point
  const std::string ser = cfg.serialize();
  const RunConfig cfg2 = RunConfig::parse(ser);
  CHECK(cfg2.serialize() == ser);

  CHECK_THROWS_AS(RunConfig::parse("wavelength = 3\n"), InvalidConfig);
  CHECK_THROWS_AS(RunConfig::parse("band = twelve\n"), InvalidConfig);
  CHECK_THROWS_AS(RunConfig::parse("version = 9\n"), InvalidConfig);
  CHECK_THROWS_AS(RunConfig::parse("scenario = cube\n"), InvalidConfig);
  CHECK_THROWS_AS(RunConfig::parse("intervals = 0\n"), InvalidConfig);
}

TEST_CASE("free-space run: error against the incident field, one iteration") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Free;
  cfg.wavenumber = 2.0;
  cfg.band = 9;
  cfg.radius_R = 2.0;
  cfg.intervals = 2;
  cfg.interp_order = 4;
  cfg.m_inc = 1;
  cfg.reference = ReferenceKind::Exact;
  const RunOutcome out = execute(cfg);
  CHECK(out.report.iterations <= 1);
  CHECK(out.relative_error >= 0.0);
  CHECK(out.relative_error < 1e-12);
}

TEST_CASE("run_single writes the report, coefficients and slice") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Sphere;
  cfg.wavenumber = 1.0;
  cfg.band = 7;
  cfg.radius_R = 2.0;
  cfg.intervals = 4;
  cfg.interp_order = 2;
  cfg.m_inc = 1;
  cfg.gmres_tol = 1e-8;
  cfg.output_dir =
      (fs::temp_directory_path() / "lsharm_run_single_test").string();
  fs::remove_all(cfg.output_dir);
  std::ostringstream log;
  CHECK(run_single(cfg, log) == 0);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "run_report.txt"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "solution_coefficients.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "field_slice.csv"));
  {
    std::ifstream rep(fs::path(cfg.output_dir) / "run_report.txt");
    std::stringstream ss;
    ss << rep.rdbuf();
    CHECK(ss.str().find("relative_error") != std::string::npos);
    CHECK(ss.str().find("iterations") != std::string::npos);
  }
  fs::remove_all(cfg.output_dir);
}

TEST_CASE("sweep requires at least two values") {
  RunConfig cfg;
  cfg.sweep = SweepKind::Intervals;
  cfg.sweep_values = {8};
  std::ostringstream log;
  CHECK_THROWS_AS(sweep_rows(cfg, log), InvalidConfig);
}

TEST_CASE("sweep emits the benchmark-table schema") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Sphere;
  cfg.wavenumber = 1.0;
  cfg.band = 5;
  cfg.radius_R = 2.0;
  cfg.interp_order = 2;
  cfg.m_inc = 0;
  cfg.gmres_tol = 1e-8;
  cfg.sweep = SweepKind::Intervals;
  cfg.sweep_values = {2, 4};
  cfg.output_dir =
      (fs::temp_directory_path() / "lsharm_sweep_test").string();
  fs::remove_all(cfg.output_dir);
  std::ostringstream log;
  CHECK(run_sweep(cfg, log) == 0);
  std::ifstream csv(fs::path(cfg.output_dir) / "sweep_table.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "value,time_per_iteration,gmres_iterations,relative_error,"
        "error_ratio,log2_error_ratio");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 2);
  fs::remove_all(cfg.output_dir);
}

TEST_CASE("determinism: identical configs give identical tables") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Sphere;
  cfg.wavenumber = 1.0;
  cfg.band = 4;
  cfg.radius_R = 2.0;
  cfg.interp_order = 2;
  cfg.m_inc = 0;
  cfg.gmres_tol = 1e-8;
  cfg.sweep = SweepKind::Intervals;
  cfg.sweep_values = {2, 4};
  std::ostringstream log;
  const auto rows1 = sweep_rows(cfg, log);
  const auto rows2 = sweep_rows(cfg, log);
  REQUIRE(rows1.size() == rows2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].relative_error == rows2[i].relative_error);
    CHECK(rows1[i].iterations == rows2[i].iterations);
    CHECK(rows1[i].error_ratio == rows2[i].error_ratio);
  }
}

TEST_CASE("radial resampling is exact for per-interval polynomials") {
  const RadialGrid coarse = RadialGrid::build(2.0, 2, 4);
  const RadialGrid fine = RadialGrid::build(2.0, 4, 3);
  ModeField f(2, coarse.total_nodes());
  auto profile = [](double rho) {
    return cdouble{0.3 + rho * (1.1 - 0.4 * rho), -0.2 * rho};
  };
  for (int node = 0; node < coarse.total_nodes(); ++node) {
    f.at(node, 1, 1) = profile(coarse.nodes[node]);
    f.at(node, 2, -2) = 2.0 * profile(coarse.nodes[node]);
  }
  const ModeField g = resample_radial(f, coarse, fine);
  for (int node = 0; node < fine.total_nodes(); ++node) {
    CHECK(std::abs(g.at(node, 1, 1) - profile(fine.nodes[node])) < 1e-13);
    CHECK(std::abs(g.at(node, 2, -2) - 2.0 * profile(fine.nodes[node])) < 1e-13);
  }
}

TEST_CASE("self-referenced interval sweep runs for the square scenario") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Square;
  cfg.wavenumber = 1.0;
  cfg.band = 7;
  cfg.radius_R = 2.0;
  cfg.interp_order = 2;
  cfg.m_inc = 1;
  cfg.gmres_tol = 1e-7;
  cfg.sweep = SweepKind::Intervals;
  cfg.sweep_values = {4, 8};
  std::ostringstream log;
  const auto rows = sweep_rows(cfg, log);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].relative_error > 0.0);
  CHECK(rows[1].relative_error > 0.0);
  CHECK(rows[1].relative_error < rows[0].relative_error);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("solve /nonexistent/config.cfg") == 2);
  const fs::path bad = fs::temp_directory_path() / "lsharm_bad.cfg";
  {
    std::ofstream out(bad);
    out << "unknown_key = 1\n";
  }
  CHECK(run_cli("solve " + bad.string()) == 2);
  fs::remove(bad);
  CHECK(run_cli("selftest") == 0);
}

TEST_CASE("moment cache reuse through the runner") {
  RunConfig cfg;
  cfg.scenario = ScenarioKind::Sphere;
  cfg.wavenumber = 1.0;
  cfg.band = 4;
  cfg.radius_R = 2.0;
  cfg.intervals = 2;
  cfg.interp_order = 3;
  cfg.m_inc = 0;
  cfg.gmres_tol = 1e-8;
  cfg.moment_cache =
      (fs::temp_directory_path() / "lsharm_cache_test").string();
  const RunOutcome first = execute(cfg);
  const RunOutcome second = execute(cfg);  // served from the cache file
  CHECK(first.relative_error == second.relative_error);
  for (auto& entry : fs::directory_iterator(fs::temp_directory_path())) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("lsharm_cache_test", 0) == 0) fs::remove(entry.path());
  }
}

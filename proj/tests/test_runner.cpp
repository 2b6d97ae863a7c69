#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "bhs/runner.hpp"
#include "doctest.h"

using namespace bhs;
namespace fs = std::filesystem;

namespace {

RunConfig small(const fs::path& dir) {
  RunConfig cfg;
  cfg.half_width = 4.0;
  cfg.dx = 0.02;
  cfg.time.t_end = 1.0;
  cfg.output.dir = dir.string();
  cfg.output.snapshot_every = 0.5;
  cfg.output.diagnostics_every = 0.1;
  return cfg;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bhs_runner_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("single run writes snapshots, diagnostics and manifest") {
  const fs::path dir = scratch("single");
  const RunOutcome out = run_single(small(dir));
  REQUIRE(out.exit_code == 0);
  for (const char* f : {"snap_t0.000000.csv", "snap_t0.100000.csv", "snap_t0.500000.csv",
                        "snap_t1.000000.csv", "diagnostics.csv", "MANIFEST"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(dir / "MANIFEST").rfind("status=complete\n", 0) == 0);
  const auto rows = read_diagnostics((dir / "diagnostics.csv").string());
  CHECK(rows.size() == 11);
  CHECK(rows.back().t == 1.0);
  CHECK(out.result.stats.max_balance_defect < 1e-12);
}

TEST_CASE("identical runs are byte-identical") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run_single(small(a)).exit_code == 0);
  REQUIRE(run_single(small(b)).exit_code == 0);
  for (const auto& e : fs::directory_iterator(a)) {
    CAPTURE(e.path().filename().string());
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
  }
}

TEST_CASE("kernel backends give the same trajectory") {
  const RunConfig cfg = small(scratch("unused"));
  for (simd::Backend backend : simd::available_backends()) {
    SimulateOptions opt;
    opt.kernels = &simd::kernels(backend);
    const RunResult r = simulate(cfg, opt);
    SimulateOptions ref_opt;
    ref_opt.kernels = &simd::scalar_kernels();
    const RunResult ref = simulate(cfg, ref_opt);
    REQUIRE(r.final_state.n.size() == ref.final_state.n.size());
    for (std::size_t i = 0; i < r.final_state.n.size(); ++i) {
      CHECK(r.final_state.n[i] == doctest::Approx(ref.final_state.n[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("t_end = 0 writes only the initial snapshot") {
  const fs::path dir = scratch("t0");
  RunConfig cfg = small(dir);
  cfg.time.t_end = 0.0;
  const RunOutcome out = run_single(cfg);
  CHECK(out.exit_code == 0);
  CHECK(fs::exists(dir / "snap_t0.000000.csv"));
  CHECK(!fs::exists(dir / "snap_t0.100000.csv"));
  CHECK(out.result.stats.steps == 0);
}

TEST_CASE("unwritable output directory is an I/O error") {
  const fs::path blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker) << "file, not a directory";
  const RunOutcome out = run_single(small(blocker / "sub"));
  CHECK(out.exit_code == 2);
  CHECK(out.message.find("I/O") != std::string::npos);
}

TEST_CASE("sweep output does not depend on parallelism") {
  SweepConfig s;
  const fs::path a = scratch("sweep_1");
  const fs::path b = scratch("sweep_8");
  s.base = small(a);
  s.axis = SweepAxis::Nu;
  s.values = {0.25, 1.0, 4.0};
  const SweepOutcome one = run_sweep(s, 1);
  s.base.output.dir = b.string();
  const SweepOutcome eight = run_sweep(s, 8);
  CHECK(one.exit_code == 0);
  CHECK(eight.exit_code == 0);
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(slurp(a / "nu_1" / "diagnostics.csv") == slurp(b / "nu_1" / "diagnostics.csv"));
  CHECK(slurp(a / "summary.csv").rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
  REQUIRE(one.rows.size() == 3);
  CHECK(one.rows[0].value == 0.25);
  // Faster fronts for smaller viscosity.
  CHECK(one.rows[0].sigma_est > one.rows[2].sigma_est);
}

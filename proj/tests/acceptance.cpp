// End-to-end acceptance suite: one PASS/FAIL line per criterion.
//
// The verdicts are measured, never adjusted. Exit status is 0 when the set of
// failing criteria equals --expect-fail (criteria known to be out of reach of
// the prescribed scheme; see README), so ctest flags both regressions and
// unexpected recoveries.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bhs/config.hpp"
#include "bhs/diagnostics.hpp"
#include "bhs/elliptic.hpp"
#include "bhs/model.hpp"
#include "bhs/runner.hpp"
#include "bhs/selfcheck.hpp"
#include "bhs/wave.hpp"

namespace fs = std::filesystem;
using namespace bhs;

namespace {

struct Verdict {
  std::string id;
  bool pass = false;
  std::string detail;
};

std::vector<Verdict> verdicts;

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

void report(const std::string& id, bool pass, const std::string& detail) {
  verdicts.push_back({id, pass, detail});
  std::printf("%s  %-16s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

void note(const std::string& what) {
  std::fprintf(stderr, "[acceptance] %s\n", what.c_str());
}

bool within(double measured, double expected, double rel) {
  return std::abs(measured - expected) <= rel * std::abs(expected);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt(x, 4);
  return s;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Relative paths and contents of every regular file under root.
std::vector<std::pair<std::string, std::string>> tree(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), root).string(), slurp(e.path()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunConfig baseline(const fs::path& dir) {
  RunConfig cfg;
  cfg.model = ModelParams::linear(100.0, 1.0, 1.0);
  cfg.half_width = 20.0;
  cfg.dx = 2e-3;
  cfg.time.t_end = 25.0;
  cfg.output.dir = dir.string();
  cfg.output.snapshot_every = 1.25;
  cfg.output.snapshot_times = {0.1};
  cfg.output.diagnostics_every = 0.05;
  cfg.fit_start = 12.5;
  cfg.fit_end = 25.0;
  return cfg;
}

RunConfig darcy(const fs::path& dir, double dx) {
  RunConfig cfg = baseline(dir);
  cfg.model = ModelParams::linear(100.0, 0.0, 1.0);
  cfg.dx = dx;
  cfg.time.t_end = 12.5;
  cfg.output.snapshot_times = {0.1, 3.75};
  cfg.fit_start = 6.0;
  cfg.fit_end = 12.5;
  return cfg;
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::string out_root = "acceptance_out";
  std::vector<std::string> expect_fail;
  app.add_option("--out", out_root, "Scratch directory for run outputs");
  app.add_option("--expect-fail", expect_fail, "Criteria known to stay red")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const fs::path root(out_root);
  fs::remove_all(root);
  fs::create_directories(root);
  const double sigma1 = 1.0 / (1.0 + std::numbers::sqrt2);
  const double jump1 = 1.0 - 1.0 / (2.0 + std::numbers::sqrt2);

  // Cheap oracle criteria first.
  {
    const TravelingWave w1 = build_wave(1.0, 1.0);
    const double r1 = verify_wave_odes(w1, 1e-3);
    const double order = std::log2(verify_wave_odes(w1, 2e-3) / r1);
    double q_worst = 0.0;
    for (double x = -20.0; x < 0.0; x += 1e-3) {
      const WaveSample s = eval_profiles(w1, x);
      q_worst = std::max(q_worst, std::abs(q_residual(s.p, s.w, w1.limit_params())));
    }
    const double gap = std::abs(eval_profiles(w1, -1e-300).p - h_map(w1.w0, w1.limit_params()));
    std::vector<double> sigmas;
    for (double nu : {0.0, 0.25, 1.0, 4.0}) sigmas.push_back(build_wave(nu, 1.0).sigma);
    report("wave-oracles",
           r1 < 1e-5 && std::abs(order - 2.0) < 0.3 && q_worst < 1e-12 && gap < 1e-12 &&
               strictly_decreasing(sigmas),
           "ode residual " + fmt(r1) + " order " + fmt(order, 4) + "; |Q| " + fmt(q_worst) +
               "; p(0-)-H(W0) " + fmt(gap) + "; sigma(nu) " + join(sigmas));
  }
  {
    const double order = manufactured_order(1.0, 64);
    // Point source of unit mass in the centre cell.
    const double dx = 0.01;
    const std::size_t cells = 2001;
    const Grid1D grid(-0.5 * dx * cells, 0.5 * dx * cells, cells);
    Field p(grid);
    p[cells / 2] = 1.0 / dx;
    const Field w = PotentialSolver(grid, 1.0, BoundaryCondition::robin()).solve(p);
    double delta_err = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
      delta_err = std::max(delta_err, std::abs(w[i] - brinkman_kernel(grid.center(i), 1.0)));
    }
    const Grid1D kgrid = Grid1D::symmetric(20.0, dx);
    const double mass = kernel_mass(kgrid, 0.5 * dx, 1.0);
    report("elliptic", std::abs(order - 2.0) <= 0.3 && delta_err < 1e-3 && std::abs(mass - 1.0) <= 1e-8,
           "order " + fmt(order, 4) + "; delta response err " + fmt(delta_err) + "; kernel mass - 1 " +
               fmt(mass - 1.0));
  }

  // Viscous baseline, twice, for determinism.
  auto t0 = std::chrono::steady_clock::now();
  const RunOutcome base = run_single(baseline(root / "baseline_a"));
  note("baseline run: " + fmt(elapsed(t0), 3) + " s, " + std::to_string(base.result.stats.steps) +
       " steps");
  const RunResult& b = base.result;
  const double sigma_nu1 = b.sigma_est(12.5, 25.0);
  report("speed-viscous", base.exit_code == 0 && within(sigma_nu1, sigma1, 0.10),
         "sigma_est " + fmt(sigma_nu1) + " vs " + fmt(sigma1) + " (rel err " +
             fmt(std::abs(sigma_nu1 / sigma1 - 1.0), 3) + ")");

  report("max-principle", base.exit_code == 0 && b.stats.max_p_seen <= 1.01,
         "max p over t>0 " + fmt(b.stats.max_p_seen, 8) + "; at t=0 " +
             fmt(b.stats.initial_max_p, 8) + " = k/(k-1), set by the initial data");

  {
    const Grid1D grid = baseline(root).grid();
    const double m0 = b.records.empty() ? NAN : b.records.front().mass;
    report("conservation",
           base.exit_code == 0 && b.stats.max_balance_defect <= 1e-12 && std::abs(m0 - 0.4) <= 1e-14,
           "max per-step relative defect " + fmt(b.stats.max_balance_defect) + "; initial mass - 0.4 " +
               fmt(m0 - 0.4) + " (" + std::to_string(grid.size()) + " cells)");
  }

  // Darcy runs: speed ratio and the absence of a pressure jump.
  t0 = std::chrono::steady_clock::now();
  const RunOutcome d_fine = run_single(darcy(root / "darcy_dx0.02", 2e-2));
  note("darcy dx=0.02: " + fmt(elapsed(t0), 4) + " s");
  t0 = std::chrono::steady_clock::now();
  const RunOutcome d_coarse = run_single(darcy(root / "darcy_dx0.04", 4e-2));
  note("darcy dx=0.04: " + fmt(elapsed(t0), 4) + " s");
  {
    const double sigma0 = d_fine.result.sigma_est(6.0, 12.5);
    const double ratio = sigma0 / sigma_nu1;
    const double expected = 1.0 + std::numbers::sqrt2;
    report("speed-ratio", d_fine.exit_code == 0 && within(ratio, expected, 0.15),
           "sigma(nu=0) " + fmt(sigma0) + " / sigma(nu=1) " + fmt(sigma_nu1) + " = " + fmt(ratio) +
               " vs " + fmt(expected) + " (rel err " + fmt(std::abs(ratio / expected - 1.0), 3) + ")");
  }
  {
    const double jump = b.records.empty() ? NAN : b.records.back().jump_est;
    const bool jump_ok = within(jump, jump1, 0.10);
    const double step_fine =
        max_pressure_step_near_front(d_fine.result.final_state, darcy(root, 2e-2).grid());
    const double step_coarse =
        max_pressure_step_near_front(d_coarse.result.final_state, darcy(root, 4e-2).grid());
    // Under Darcy's law |p'| = sigma = P_M at the front, so a continuous profile
    // changes by about dx per cell.
    const bool darcy_ok = d_fine.exit_code == 0 && d_coarse.exit_code == 0 &&
                          step_fine <= 5.0 * 2e-2 && step_coarse <= 5.0 * 4e-2 &&
                          step_fine < step_coarse;
    report("pressure-jump", jump_ok && darcy_ok,
           std::string(jump_ok ? "" : "[viscous part fails] ") + "nu=1 jump_est(t=25) " + fmt(jump) +
               " vs " + fmt(jump1) + " (rel err " + fmt(std::abs(jump / jump1 - 1.0), 3) +
               "); nu=0 max step near front " + fmt(step_coarse) + " (dx=0.04, bound 0.2) -> " +
               fmt(step_fine) + " (dx=0.02, bound 0.1)");
  }

  // k sweep: trends, and independence from parallelism.
  SweepConfig sweep;
  sweep.base = baseline(root / "sweep_p1");
  sweep.base.time.t_end = 20.0;
  sweep.base.output.snapshot_every = 5.0;
  sweep.base.output.snapshot_times.clear();
  sweep.base.fit_start = 10.0;
  sweep.base.fit_end = 20.0;
  sweep.axis = SweepAxis::K;
  sweep.values = {25.0, 50.0, 100.0, 200.0};
  t0 = std::chrono::steady_clock::now();
  const SweepOutcome s1 = run_sweep(sweep, 1);
  note("k sweep (serial): " + fmt(elapsed(t0), 3) + " s");
  std::vector<double> comp;
  std::vector<double> osc;
  for (const auto& row : s1.rows) {
    comp.push_back(row.comp_residual_final);
    osc.push_back(row.osc_mid_final);
  }
  report("complementarity", s1.exit_code == 0 && strictly_decreasing(comp),
         "comp_residual(t=20) for k=25,50,100,200: " + join(comp));
  report("oscillation", s1.exit_code == 0 && strictly_decreasing(osc),
         "osc_mid(t=20) for k=25,50,100,200: " + join(osc));

  {
    const RunOutcome again = run_single(baseline(root / "baseline_b"));
    const bool runs_equal = base.exit_code == 0 && again.exit_code == 0 &&
                            tree(root / "baseline_a") == tree(root / "baseline_b");
    sweep.base.output.dir = (root / "sweep_p4").string();
    const SweepOutcome s4 = run_sweep(sweep, 4);
    const bool sweeps_equal = s4.exit_code == s1.exit_code && tree(root / "sweep_p1") == tree(root / "sweep_p4");
    report("determinism", runs_equal && sweeps_equal,
           std::string("baseline runs ") + (runs_equal ? "byte-identical" : "DIFFER") + " (" +
               std::to_string(tree(root / "baseline_a").size()) + " files); sweep parallelism 1 vs 4 " +
               (sweeps_equal ? "byte-identical" : "DIFFER"));
  }

  const std::set<std::string> expected(expect_fail.begin(), expect_fail.end());
  std::set<std::string> failed;
  for (const auto& v : verdicts) {
    if (!v.pass) failed.insert(v.id);
  }
  std::size_t passed = verdicts.size() - failed.size();
  std::printf("%zu/%zu criteria pass\n", passed, verdicts.size());
  if (failed != expected) {
    std::printf("failing set differs from --expect-fail\n");
    return 1;
  }
  if (!failed.empty()) std::printf("all failures are the documented known-red criteria\n");
  return 0;
}

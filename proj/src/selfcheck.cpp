#include "bhs/selfcheck.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bhs/diagnostics.hpp"
#include "bhs/elliptic.hpp"
#include "bhs/model.hpp"
#include "bhs/runner.hpp"
#include "bhs/simd/kernels.hpp"
#include "bhs/wave.hpp"

namespace bhs {

namespace {

double manufactured_error(double nu, std::size_t n_cells) {
  const double pi = std::numbers::pi;
  const Grid1D grid(-pi, pi, n_cells);
  Field p(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) p[i] = (1.0 + nu) * std::cos(grid.center(i));
  const Field w = PotentialSolver(grid, nu, BoundaryCondition::dirichlet(-1.0, -1.0)).solve(p);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    err = std::max(err, std::abs(w[i] - std::cos(grid.center(i))));
  }
  return err;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double manufactured_order(double nu, std::size_t n_cells) {
  return std::log2(manufactured_error(nu, n_cells) / manufactured_error(nu, 2 * n_cells));
}

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  const ModelParams base = ModelParams::linear(100.0, 1.0, 1.0);
  {
    double worst = 0.0;
    for (double n : {0.5, 1.0, 1.1}) {
      const double back = density_of_pressure(pressure_of_density(n, base), base);
      worst = std::max(worst, std::abs(back - n) / n);
    }
    add("pressure law inverse", worst < 1e-12, "max rel err " + fmt(worst));
  }
  {
    double worst = std::abs(h_map(base.p_max(), base) - base.p_max());
    for (int i = 0; i <= 100; ++i) {
      const double w = base.p_max() * i / 100.0;
      worst = std::max(worst, std::abs(q_residual(h_map(w, base), w, base)));
    }
    add("H fixed point and Q(H(w), w) = 0", worst < 1e-12, "max residual " + fmt(worst));
  }
  {
    const TravelingWave wave = build_wave(1.0, 1.0);
    const double r1 = verify_wave_odes(wave, 1e-3);
    const double r2 = verify_wave_odes(wave, 5e-4);
    add("wave ODE residual", r1 < 1e-5 && std::abs(r1 / r2 - 4.0) < 0.5,
        "residual " + fmt(r1) + ", ratio " + fmt(r1 / r2));
    const double gap = std::abs(eval_profiles(wave, 0.0).p - h_map(wave.w0, wave.limit_params()));
    add("wave p(0-) = H(W0)", gap < 1e-12, "gap " + fmt(gap));
    bool decreasing = true;
    double prev = build_wave(0.0, 1.0).sigma;
    for (double nu : {0.25, 1.0, 4.0}) {
      const double s = build_wave(nu, 1.0).sigma;
      decreasing = decreasing && s < prev;
      prev = s;
    }
    add("wave speed decreasing in nu", decreasing, "");
  }
  {
    const double order = manufactured_order(1.0, 200);
    add("potential solver order", std::abs(order - 2.0) < 0.3, "order " + fmt(order));
    const Grid1D grid = Grid1D::symmetric(20.0, 0.01);
    const double mass = kernel_mass(grid, 0.0, 1.0);
    add("kernel mass", std::abs(mass - 1.0) < 1e-8, "mass " + fmt(mass));
  }
  if (simd::avx2_available()) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.05);
    std::vector<double> n(1031);
    for (auto& v : n) v = dist(rng);
    std::vector<double> a(n.size()), b(n.size());
    simd::scalar_kernels().pressure(n, a, 100.0);
    simd::kernels(simd::Backend::Avx2).pressure(n, b, 100.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (a[i] > 0.0) worst = std::max(worst, std::abs(a[i] - b[i]) / a[i]);
    }
    add("avx2 pressure kernel vs scalar", worst < 1e-13, "max rel diff " + fmt(worst));
  } else {
    add("avx2 pressure kernel vs scalar", true, "skipped: AVX2 unavailable");
  }
  {
    RunConfig cfg;
    cfg.half_width = 5.0;
    cfg.dx = 0.01;
    cfg.time.t_end = 1.0;
    cfg.output.snapshot_times.clear();
    const RunResult r = simulate(cfg);
    add("short run completes", r.complete, r.error);
    add("short run mass balance", r.stats.max_balance_defect < 1e-12,
        "max rel defect " + fmt(r.stats.max_balance_defect));
    add("short run positivity and pressure bound",
        r.stats.min_n_seen >= 0.0 && r.stats.max_p_seen <= 1.01,
        "min n " + fmt(r.stats.min_n_seen) + ", max p " + fmt(r.stats.max_p_seen));
  }
  return out;
}

}  // namespace bhs

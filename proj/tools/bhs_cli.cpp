// bhs: command-line front end.
//
//   bhs run <config>                     single simulation
//   bhs sweep <config> [--jobs N]        k or nu sweep with summary.csv
//   bhs wave --nu V --pmax V [--out F]   analytic traveling wave table
//   bhs check                            invariant self-test battery

#include <cstdio>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "bhs/config.hpp"
#include "bhs/csv_io.hpp"
#include "bhs/errors.hpp"
#include "bhs/runner.hpp"
#include "bhs/selfcheck.hpp"
#include "bhs/simd/kernels.hpp"
#include "bhs/wave.hpp"

namespace {

int cmd_run(const std::string& path, const std::string& out_dir) {
  bhs::RunConfig cfg = bhs::parse_config(bhs::read_text_file(path));
  if (!out_dir.empty()) cfg.output.dir = out_dir;
  std::cerr << "bhs run: k=" << cfg.model.k << " nu=" << cfg.model.nu << " dx=" << cfg.dx
            << " t_end=" << cfg.time.t_end << " kernels=" << bhs::simd::active_kernels().name
            << " -> " << cfg.output.dir << '\n';
  const bhs::RunOutcome outcome = bhs::run_single(cfg);
  if (outcome.exit_code != 0) {
    std::cerr << "bhs run: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  const auto& res = outcome.result;
  std::cerr << "bhs run: " << res.stats.steps << " steps, sigma_est="
            << res.sigma_est(cfg.fit_lo(), cfg.fit_hi()) << '\n';
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& out_dir, unsigned jobs) {
  bhs::SweepConfig cfg = bhs::parse_sweep_config(bhs::read_text_file(path));
  if (!out_dir.empty()) cfg.base.output.dir = out_dir;
  const bhs::SweepOutcome outcome = bhs::run_sweep(cfg, jobs);
  for (const auto& row : outcome.rows) {
    std::cerr << "  " << row.value << ": sigma_est=" << row.sigma_est
              << " comp_residual=" << row.comp_residual_final << " [" << row.status << "]\n";
  }
  return outcome.exit_code;
}

int cmd_wave(double nu, double p_max, const std::string& out, double half_width, double dx) {
  const bhs::TravelingWave wave = bhs::build_wave(nu, p_max);
  std::fprintf(stderr, "nu=%s p_max=%s w0=%s sigma=%s jump=%s\n", bhs::format_double(nu).c_str(),
               bhs::format_double(p_max).c_str(), bhs::format_double(wave.w0).c_str(),
               bhs::format_double(wave.sigma).c_str(), bhs::format_double(wave.jump).c_str());
  if (nu == 0.0) {
    std::fprintf(stderr, "profiles are only defined for nu > 0; no table written\n");
    return 0;
  }
  const bhs::Grid1D grid = bhs::Grid1D::symmetric(half_width, dx);
  const bhs::WaveFields f = bhs::sample_wave(wave, grid);
  const bhs::SnapshotTable table{grid.centers(), f.n.values, f.p.values, f.w.values};
  if (out.empty() || out == "-") {
    bhs::write_table(stdout, table);
    return 0;
  }
  std::FILE* file = std::fopen(out.c_str(), "w");
  if (!file) {
    std::fprintf(stderr, "cannot write %s\n", out.c_str());
    return 2;
  }
  bhs::write_table(file, table);
  return std::fclose(file) == 0 ? 0 : 2;
}

int cmd_check() {
  int failures = 0;
  for (const auto& r : bhs::run_self_checks()) {
    std::printf("%s  %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : "  ", r.detail.c_str());
    failures += r.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brinkman tumor growth simulator with stiff pressure law"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Override output.dir");

  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run a k or nu sweep");
  sweep->add_option("config", config_path, "Sweep configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Override output.dir");
  sweep->add_option("--jobs,-j", jobs, "Concurrent members")->check(CLI::PositiveNumber);

  double nu = 1.0;
  double p_max = 1.0;
  double half_width = 10.0;
  double dx = 0.01;
  std::string wave_out;
  auto* wave = app.add_subcommand("wave", "Write the analytic traveling wave as CSV");
  wave->add_option("--nu", nu, "Viscosity")->required();
  wave->add_option("--pmax", p_max, "Homeostatic pressure")->required();
  wave->add_option("--out,-o", wave_out, "Output CSV (default stdout)");
  wave->add_option("--half-width", half_width, "Table covers [-L, L]");
  wave->add_option("--dx", dx, "Table spacing");

  auto* check = app.add_subcommand("check", "Run the invariant self-test battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir);
    if (*sweep) return cmd_sweep(config_path, out_dir, jobs);
    if (*wave) return cmd_wave(nu, p_max, wave_out, half_width, dx);
    if (*check) return cmd_check();
  } catch (const bhs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

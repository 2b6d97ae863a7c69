#include "bhs/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <thread>

#include "bhs/csv_io.hpp"

namespace bhs {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Collector final : public RunObserver {
 public:
  Collector(const RunConfig& cfg, const Grid1D& grid, const simd::KernelTable& kernels,
            RunResult& result, const SimulateOptions& options)
      : cfg_(cfg),
        grid_(grid),
        kernels_(kernels),
        result_(result),
        keep_(options.keep_snapshots),
        extra_(options.extra),
        diag_out_(options.diagnostics_out) {}

  void on_snapshot(const SimState& s) override {
    if (keep_) result_.snapshots.push_back(s);
    if (extra_) extra_->on_snapshot(s);
  }

  void on_sample(const SimState& s) override {
    result_.records.push_back(make_record(s, grid_, cfg_.model, cfg_.diagnostics, kernels_));
    if (diag_out_) diag_out_->append(result_.records.back());
    if (extra_) extra_->on_sample(s);
  }

  void on_step(const StepReport& r) override {
    auto& stats = result_.stats;
    ++stats.steps;
    stats.max_p_seen = std::max(stats.max_p_seen, r.max_p);
    if (r.mass_before > 0.0) {
      stats.max_balance_defect =
          std::max(stats.max_balance_defect, std::abs(r.balance_defect()) / r.mass_before);
    }
    if (extra_) extra_->on_step(r);
  }

  void on_abort(const SimState& s, const std::exception& e) override {
    result_.final_state = s;
    if (extra_) extra_->on_abort(s, e);
  }

 private:
  const RunConfig& cfg_;
  const Grid1D& grid_;
  const simd::KernelTable& kernels_;
  RunResult& result_;
  bool keep_;
  RunObserver* extra_;
  DiagnosticsWriter* diag_out_;
};

// Streams snapshots into the output directory; diagnostics rows go through
// the collector so each record is computed once.
class FileSink final : public RunObserver {
 public:
  FileSink(fs::path dir, const Grid1D& grid)
      : dir_(std::move(dir)), grid_(grid), diag_((dir_ / "diagnostics.csv").string()) {}

  void on_snapshot(const SimState& s) override { write(s); }

  void on_abort(const SimState& s, const std::exception&) override {
    if (written_.empty() || written_.back() != snapshot_filename(s.t)) {
      try {
        write(s);
      } catch (const std::exception&) {
      }
    }
    try {
      diag_.flush();
    } catch (const std::exception&) {
    }
  }

  void finish() { diag_.flush(); }
  DiagnosticsWriter& diagnostics() { return diag_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  void write(const SimState& s) {
    const std::string name = snapshot_filename(s.t);
    write_snapshot((dir_ / name).string(), s, grid_);
    written_.push_back(name);
  }

  fs::path dir_;
  const Grid1D& grid_;
  DiagnosticsWriter diag_;
  std::vector<std::string> written_;
};

void write_manifest(const fs::path& dir, bool complete, const RunResult& result,
                    const std::vector<std::string>& files) {
  std::ofstream out(dir / "MANIFEST", std::ios::binary);
  out << "status=" << (complete ? "complete" : "incomplete") << '\n';
  out << "t_final=" << format_double(result.final_state.t) << '\n';
  out << "steps=" << result.stats.steps << '\n';
  if (!complete) out << "error=" << result.error << '\n';
  out << "files:\n";
  for (const auto& f : files) out << f << '\n';
  out << "diagnostics.csv\n";
}

}  // namespace

double RunResult::sigma_est(double t_lo, double t_hi) const {
  std::vector<double> times;
  std::vector<double> positions;
  for (const auto& r : records) {
    if (std::isfinite(r.front_pos)) {
      times.push_back(r.t);
      positions.push_back(r.front_pos);
    }
  }
  try {
    return front_tracking(times, positions, t_lo, t_hi).sigma_est;
  } catch (const std::invalid_argument&) {
    return kNaN;
  }
}

RunResult simulate(const RunConfig& cfg, const SimulateOptions& options) {
  cfg.validate();
  const Grid1D grid = cfg.grid();
  const simd::KernelTable& kernels = options.kernels ? *options.kernels : simd::active_kernels();
  Simulator sim(grid, cfg.model, cfg.bc, kernels);

  RunResult result;
  Collector collector(cfg, grid, kernels, result, options);
  TimeControls controls = cfg.time;
  controls.snapshot_every = cfg.output.snapshot_every;
  const RunSchedule schedule =
      RunSchedule::regular(controls.t_end, cfg.output.snapshot_every, cfg.output.diagnostics_every,
                           cfg.output.snapshot_times);

  SimState state = sim.make_state(indicator_average(grid, cfg.initial.a, cfg.initial.b));
  result.stats.min_n_seen = mass_and_bounds(state, grid).min_n;
  result.stats.initial_max_p = mass_and_bounds(state, grid).max_p;

  try {
    result.final_state = sim.run(std::move(state), controls, schedule, collector);
    result.complete = true;
  } catch (const std::exception& e) {
    result.complete = false;
    result.error = e.what();
  }
  result.stats.min_n_seen = std::min(result.stats.min_n_seen,
                                     mass_and_bounds(result.final_state, grid).min_n);
  return result;
}

RunOutcome run_single(const RunConfig& cfg) {
  RunOutcome outcome;
  const fs::path dir(cfg.output.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    outcome.exit_code = 2;
    outcome.message = "I/O error: cannot create " + dir.string() + ": " + ec.message();
    return outcome;
  }

  const Grid1D grid = cfg.grid();
  std::optional<FileSink> sink;
  try {
    sink.emplace(dir, grid);
  } catch (const std::exception& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("I/O error: ") + e.what();
    return outcome;
  }

  SimulateOptions options;
  options.extra = &*sink;
  options.diagnostics_out = &sink->diagnostics();
  try {
    outcome.result = simulate(cfg, options);
    sink->finish();
  } catch (const std::exception& e) {
    // Output failures surface here; solver failures come back in the result.
    outcome.exit_code = 2;
    outcome.message = std::string("I/O error: ") + e.what();
    outcome.result.error = outcome.message;
    write_manifest(dir, false, outcome.result, sink->written());
    return outcome;
  }

  write_manifest(dir, outcome.result.complete, outcome.result, sink->written());
  if (!outcome.result.complete) {
    outcome.exit_code = 1;
    outcome.message = "solver abort: " + outcome.result.error;
  }
  return outcome;
}

SweepOutcome run_sweep(const SweepConfig& cfg, unsigned parallelism) {
  SweepOutcome outcome;
  const std::size_t count = cfg.values.size();
  outcome.rows.resize(count);
  if (parallelism == 0) parallelism = 1;

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < count; i = next++) {
      SweepRow& row = outcome.rows[i];
      row.value = cfg.values[i];
      row.sigma_est = row.jump_est = row.comp_residual_final = row.osc_mid_final = kNaN;
      try {
        const RunConfig member = cfg.member(cfg.values[i]);
        const RunOutcome run = run_single(member);
        const RunResult& res = run.result;
        row.sigma_est = res.sigma_est(member.fit_lo(), member.fit_hi());
        if (!res.records.empty()) {
          row.jump_est = res.records.back().jump_est;
          row.comp_residual_final = res.records.back().comp_residual;
          row.osc_mid_final = res.records.back().osc_mid;
        }
        row.status = run.exit_code == 0 ? "ok" : run.message;
      } catch (const std::exception& e) {
        row.status = e.what();
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(parallelism, count));
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (const auto& row : outcome.rows) {
    if (row.status != "ok") outcome.exit_code = 1;
  }

  const fs::path root(cfg.base.output.dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  std::FILE* f = std::fopen((root / "summary.csv").string().c_str(), "w");
  if (!f) {
    outcome.exit_code = 2;
    return outcome;
  }
  std::fprintf(f, "%s\n", kSummaryHeader);
  for (const auto& row : outcome.rows) {
    std::string status = row.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    std::fprintf(f, "%s,%s,%s,%s,%s,%s\n", format_double(row.value).c_str(),
                 format_double(row.sigma_est).c_str(), format_double(row.jump_est).c_str(),
                 format_double(row.comp_residual_final).c_str(),
                 format_double(row.osc_mid_final).c_str(), status.c_str());
  }
  std::fclose(f);
  return outcome;
}

}  // namespace bhs

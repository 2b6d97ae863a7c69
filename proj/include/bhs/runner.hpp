#pragma once

// Orchestration of single runs and parameter sweeps.

#include <string>
#include <vector>

#include "bhs/config.hpp"
#include "bhs/csv_io.hpp"
#include "bhs/diagnostics.hpp"
#include "bhs/transport.hpp"

namespace bhs {

struct RunStats {
  std::size_t steps = 0;
  double max_balance_defect = 0.0;  ///< max over steps of |defect| / mass_before
  double initial_max_p = 0.0;
  double max_p_seen = 0.0;  ///< max pressure after every accepted step (t > 0)
  double min_n_seen = 0.0;
};

struct RunResult {
  SimState final_state;  ///< last accepted state, also on abort
  std::vector<DiagnosticsRecord> records;
  std::vector<SimState> snapshots;  ///< only filled when requested
  RunStats stats;
  bool complete = false;
  std::string error;

  /// Least-squares front speed over [t_lo, t_hi] from the diagnostics
  /// records; NaN when fewer than 3 records carry a front.
  double sigma_est(double t_lo, double t_hi) const;
};

struct SimulateOptions {
  bool keep_snapshots = false;
  RunObserver* extra = nullptr;  ///< forwarded every event
  const simd::KernelTable* kernels = nullptr;
  DiagnosticsWriter* diagnostics_out = nullptr;  ///< receives each record
};

/// Runs cfg in memory. Solver failures are reported through
/// RunResult::complete / error rather than thrown.
RunResult simulate(const RunConfig& cfg, const SimulateOptions& options = {});

struct RunOutcome {
  int exit_code = 0;  ///< 0 complete, 1 solver abort, 2 I/O error
  std::string message;
  RunResult result;
};

/// Runs cfg and writes snapshots, diagnostics.csv and MANIFEST into
/// cfg.output.dir.
RunOutcome run_single(const RunConfig& cfg);

struct SweepRow {
  double value = 0.0;
  double sigma_est = 0.0;
  double jump_est = 0.0;
  double comp_residual_final = 0.0;
  double osc_mid_final = 0.0;
  std::string status;  ///< "ok" or the member's error
};

struct SweepOutcome {
  int exit_code = 0;  ///< 0 when every member completed
  std::vector<SweepRow> rows;
};

inline constexpr const char* kSummaryHeader =
    "value,sigma_est,jump_est,comp_residual_final,osc_mid_final,status";

/// One subdirectory per value plus summary.csv under base.output.dir. Rows
/// follow the order of cfg.values whatever the parallelism.
SweepOutcome run_sweep(const SweepConfig& cfg, unsigned parallelism);

}  // namespace bhs

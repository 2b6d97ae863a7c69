#pragma once

// Run and sweep configuration: flat `key = value` text with dotted sections.
//
//   # baseline
//   model.k = 100
//   model.nu = 1
//   grid.dx = 2e-3
//
// Unknown keys, duplicate keys and malformed numbers are rejected with the
// offending key in the error.

#include <string>
#include <string_view>
#include <vector>

#include "bhs/diagnostics.hpp"
#include "bhs/elliptic.hpp"
#include "bhs/grid.hpp"
#include "bhs/model.hpp"
#include "bhs/transport.hpp"

namespace bhs {

struct InitialData {
  double a = -0.2;
  double b = 0.2;
};

struct OutputSettings {
  std::string dir = "bhs_out";
  double snapshot_every = 1.25;
  std::vector<double> snapshot_times{0.1};  ///< extra snapshot instants
  double diagnostics_every = 0.05;          ///< 0 records every step
};

struct RunConfig {
  ModelParams model = ModelParams::linear(100.0, 1.0, 1.0);
  double half_width = 20.0;
  double dx = 2e-3;
  BoundaryCondition bc{};
  TimeControls time{};
  InitialData initial{};
  OutputSettings output{};
  DiagnosticsSettings diagnostics{};
  double fit_start = -1.0;  ///< negative selects t_end / 2
  double fit_end = -1.0;    ///< negative selects t_end

  Grid1D grid() const { return Grid1D::symmetric(half_width, dx); }
  double fit_lo() const { return fit_start < 0.0 ? 0.5 * time.t_end : fit_start; }
  double fit_hi() const { return fit_end < 0.0 ? time.t_end : fit_end; }

  /// Throws ConfigError naming the violated key.
  void validate() const;
};

enum class SweepAxis { K, Nu };

struct SweepConfig {
  RunConfig base;
  SweepAxis axis = SweepAxis::K;
  std::vector<double> values;

  /// Copy of base with the axis set to `value` (not yet validated).
  RunConfig member(double value) const;
  std::string member_name(double value) const;
};

enum class Defaults { Enabled, Disabled };

/// Default output directory: $BHS_OUTPUT_ROOT or "bhs_out".
std::string default_output_root();

RunConfig parse_config(std::string_view text, Defaults defaults = Defaults::Enabled);

/// Same document plus `sweep.axis` (k or nu) and `sweep.values` (comma list).
SweepConfig parse_sweep_config(std::string_view text, Defaults defaults = Defaults::Enabled);

std::string read_text_file(const std::string& path);

}  // namespace bhs

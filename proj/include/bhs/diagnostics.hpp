#pragma once

// Measurable quantities that track the stiff-pressure (Hele-Shaw) limit.

#include <span>
#include <vector>

#include "bhs/grid.hpp"
#include "bhs/model.hpp"
#include "bhs/simd/kernels.hpp"
#include "bhs/transport.hpp"

namespace bhs {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double max_p = 0.0;
  double comp_residual = 0.0;  ///< k sum p |Q| dx
  double front_pos = 0.0;      ///< NaN when no n = 1/2 crossing exists
  double osc_mid = 0.0;        ///< meas{beta1 <= p <= H(W) - beta2}
  double osc_over = 0.0;       ///< meas{p >= H(W) + beta2}
  double jump_est = 0.0;       ///< NaN when no front exists
};

/// k * sum_i p_i |w_i - p_i + nu G(p_i)| dx.
double comp_residual(const SimState& state, const Grid1D& grid, const ModelParams& params,
                     const simd::KernelTable& kernels = simd::active_kernels());

struct OscillationMeasures {
  double mid = 0.0;
  double over = 0.0;
};

/// Lebesgue measures of the intermediate and overshoot pressure bands.
/// Throws std::invalid_argument unless beta1 > 0 and 0 < beta2 < p_m.
OscillationMeasures oscillation_measures(const SimState& state, const Grid1D& grid,
                                         const ModelParams& params, double beta1, double beta2);

/// Rightmost downward crossing of n = 1/2, linearly interpolated between cell
/// centers. Throws FrontAbsentError.
double front_position(const Field& n, const Grid1D& grid);

struct FrontTrack {
  std::vector<double> times;
  std::vector<double> positions;
  double sigma_est = 0.0;  ///< least-squares slope over the fit window
};

/// Least-squares front speed from (t, x) samples with t in [t_lo, t_hi].
/// Needs at least 3 samples in the window.
FrontTrack front_tracking(std::span<const double> times, std::span<const double> positions,
                          double t_lo, double t_hi);
FrontTrack front_tracking(std::span<const SimState> snapshots, const Grid1D& grid, double t_lo,
                          double t_hi);

/// Number of cells behind the front scanned by jump_estimate.
inline constexpr std::size_t kJumpWindowCells = 10;

/// Max pressure over the kJumpWindowCells cells just behind the front.
double jump_estimate(const SimState& state, const Grid1D& grid);

/// Max |p_{i+1} - p_i| over cell pairs within `cells` of the front.
double max_pressure_step_near_front(const SimState& state, const Grid1D& grid,
                                    std::size_t cells = kJumpWindowCells);

struct MassAndBounds {
  double mass = 0.0;
  double max_p = 0.0;
  double min_n = 0.0;
};
MassAndBounds mass_and_bounds(const SimState& state, const Grid1D& grid);

struct DiagnosticsSettings {
  double beta1 = 0.05;
  double beta2 = 0.05;
};

DiagnosticsRecord make_record(const SimState& state, const Grid1D& grid, const ModelParams& params,
                              const DiagnosticsSettings& settings,
                              const simd::KernelTable& kernels = simd::active_kernels());

}  // namespace bhs

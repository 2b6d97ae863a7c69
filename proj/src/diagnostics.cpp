#include "bhs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bhs/errors.hpp"

namespace bhs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

OscillationMeasures count_bands(const SimState& state, const Grid1D& grid,
                                const ModelParams& params, double beta1, double beta2) {
  std::size_t mid = 0;
  std::size_t over = 0;
  for (std::size_t i = 0; i < state.p.size(); ++i) {
    const double p = state.p[i];
    const double h = h_map(state.w[i], params);
    if (p >= beta1 && p <= h - beta2) ++mid;
    if (p >= h + beta2) ++over;
  }
  return {static_cast<double>(mid) * grid.dx(), static_cast<double>(over) * grid.dx()};
}

// Index of the last cell with n >= 1/2 that has a successor below 1/2.
std::size_t front_cell(const Field& n) {
  std::size_t i = n.size();
  while (i-- > 0) {
    if (n[i] >= 0.5) {
      if (i + 1 == n.size()) break;
      return i;
    }
  }
  throw FrontAbsentError("no downward crossing of n = 1/2");
}

}  // namespace

double comp_residual(const SimState& state, const Grid1D& grid, const ModelParams& params,
                     const simd::KernelTable& kernels) {
  double total = 0.0;
  if (params.growth.is_linear()) {
    total = kernels.weighted_abs_residual(state.p.span(), state.w.span(), params.nu,
                                          params.p_max(), -1.0);
  } else {
    for (std::size_t i = 0; i < state.p.size(); ++i) {
      total += state.p[i] * std::abs(q_residual(state.p[i], state.w[i], params));
    }
  }
  return params.k * total * grid.dx();
}

OscillationMeasures oscillation_measures(const SimState& state, const Grid1D& grid,
                                         const ModelParams& params, double beta1, double beta2) {
  const double pm = min_limit_pressure(params);
  if (!(beta1 > 0.0)) throw std::invalid_argument("oscillation_measures: beta1 must be positive");
  if (!(beta2 > 0.0) || !(beta2 < pm)) {
    throw std::invalid_argument("oscillation_measures: need 0 < beta2 < p_m = H(0)");
  }
  return count_bands(state, grid, params, beta1, beta2);
}

double front_position(const Field& n, const Grid1D& grid) {
  const std::size_t i = front_cell(n);
  const double frac = (n[i] - 0.5) / (n[i] - n[i + 1]);
  return grid.center(i) + frac * grid.dx();
}

FrontTrack front_tracking(std::span<const double> times, std::span<const double> positions,
                          double t_lo, double t_hi) {
  if (times.size() != positions.size()) {
    throw std::invalid_argument("front_tracking: times and positions differ in length");
  }
  FrontTrack track;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_lo && times[i] <= t_hi) {
      track.times.push_back(times[i]);
      track.positions.push_back(positions[i]);
    }
  }
  const std::size_t m = track.times.size();
  if (m < 3) throw std::invalid_argument("front_tracking: need >= 3 samples in the fit window");

  double t_mean = 0.0;
  double x_mean = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    t_mean += track.times[i];
    x_mean += track.positions[i];
  }
  t_mean /= static_cast<double>(m);
  x_mean /= static_cast<double>(m);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dt = track.times[i] - t_mean;
    sxy += dt * (track.positions[i] - x_mean);
    sxx += dt * dt;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("front_tracking: samples share one time");
  track.sigma_est = sxy / sxx;
  return track;
}

FrontTrack front_tracking(std::span<const SimState> snapshots, const Grid1D& grid, double t_lo,
                          double t_hi) {
  std::vector<double> times;
  std::vector<double> positions;
  for (const auto& s : snapshots) {
    if (s.t < t_lo || s.t > t_hi) continue;
    times.push_back(s.t);
    positions.push_back(front_position(s.n, grid));
  }
  return front_tracking(times, positions, t_lo, t_hi);
}

double jump_estimate(const SimState& state, const Grid1D& grid) {
  const double front = front_position(state.n, grid);
  // Cells whose centers lie behind (left of) the front.
  std::size_t end = 0;
  while (end < grid.size() && grid.center(end) < front) ++end;
  const std::size_t begin = end > kJumpWindowCells ? end - kJumpWindowCells : 0;
  double best = 0.0;
  for (std::size_t i = begin; i < end; ++i) best = std::max(best, state.p[i]);
  return best;
}

double max_pressure_step_near_front(const SimState& state, const Grid1D& grid, std::size_t cells) {
  const std::size_t centre = front_cell(state.n);
  const std::size_t lo = centre > cells ? centre - cells : 0;
  const std::size_t hi = std::min(centre + cells, grid.size() - 1);
  double worst = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    worst = std::max(worst, std::abs(state.p[i + 1] - state.p[i]));
  }
  return worst;
}

MassAndBounds mass_and_bounds(const SimState& state, const Grid1D& grid) {
  MassAndBounds out;
  if (state.n.size() == 0) return out;
  double mass = 0.0;
  for (double v : state.n.values) mass += v;
  out.mass = mass * grid.dx();
  out.max_p = *std::max_element(state.p.values.begin(), state.p.values.end());
  out.min_n = *std::min_element(state.n.values.begin(), state.n.values.end());
  return out;
}

DiagnosticsRecord make_record(const SimState& state, const Grid1D& grid, const ModelParams& params,
                              const DiagnosticsSettings& settings,
                              const simd::KernelTable& kernels) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  const MassAndBounds mb = mass_and_bounds(state, grid);
  rec.mass = mb.mass;
  rec.max_p = mb.max_p;
  rec.comp_residual = comp_residual(state, grid, params, kernels);
  // Darcy has p_m = 0, so the band check of oscillation_measures cannot hold;
  // the bands are still well defined around H = identity.
  const OscillationMeasures osc =
      params.is_darcy()
          ? count_bands(state, grid, params, settings.beta1, settings.beta2)
          : oscillation_measures(state, grid, params, settings.beta1, settings.beta2);
  rec.osc_mid = osc.mid;
  rec.osc_over = osc.over;
  try {
    rec.front_pos = front_position(state.n, grid);
    rec.jump_est = jump_estimate(state, grid);
  } catch (const FrontAbsentError&) {
    rec.front_pos = kNaN;
    rec.jump_est = kNaN;
  }
  return rec;
}

}  // namespace bhs

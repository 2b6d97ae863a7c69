#pragma once

// Explicit conservative upwind finite-volume transport of the density,
// coupled each step to the pressure law and the Brinkman potential.

#include <optional>
#include <vector>

#include "bhs/elliptic.hpp"
#include "bhs/grid.hpp"
#include "bhs/model.hpp"
#include "bhs/simd/kernels.hpp"

namespace bhs {

struct SimState {
  double t = 0.0;
  Field n;
  Field p;
  Field w;
};

struct TimeControls {
  double cfl = 0.4;
  double dt_max = 1e-2;
  double t_end = 25.0;
  double snapshot_every = 1.25;

  void validate() const;
};

/// Mass bookkeeping of one accepted step. The update is conservative, so
/// mass_after - mass_before == growth - outflow up to rounding.
struct StepReport {
  double t = 0.0;  ///< time after the step
  double dt = 0.0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double growth = 0.0;   ///< dt * sum n_i G(p_i) dx, old state
  double outflow = 0.0;  ///< dt * (F_right - F_left) through the domain ends
  double max_p = 0.0;    ///< max pressure after the step

  double balance_defect() const { return (mass_after - mass_before) - (growth - outflow); }
};

/// Receives output from Simulator::run. Default implementations ignore events.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_snapshot(const SimState&) {}
  virtual void on_sample(const SimState&) {}
  virtual void on_step(const StepReport&) {}
  /// Called with the last accepted state before run() rethrows.
  virtual void on_abort(const SimState&, const std::exception&) {}
};

/// Output schedule. Times are absolute; t = 0 and t_end are always included
/// in both lists.
struct RunSchedule {
  std::vector<double> snapshot_times;
  std::vector<double> sample_times;

  bool sample_every_step = false;

  /// Cadence-based schedule; sample_every = 0 samples after every step.
  static RunSchedule regular(double t_end, double snapshot_every, double sample_every,
                             const std::vector<double>& extra_snapshots = {});
};

/// u_{i+1/2} = -(w_{i+1} - w_i)/dx on all n+1 faces, outer faces closed with
/// the ghost rules of the elliptic boundary condition.
std::vector<double> face_velocities(const Field& w, const Grid1D& grid, GhostRule left,
                                    GhostRule right);
std::vector<double> face_velocities(const Field& w, const Grid1D& grid, const ModelParams& params,
                                    BoundaryCondition bc = {});

class Simulator {
 public:
  Simulator(const Grid1D& grid, const ModelParams& params, BoundaryCondition bc = {},
            const simd::KernelTable& kernels = simd::active_kernels());

  const Grid1D& grid() const { return grid_; }
  const ModelParams& params() const { return params_; }
  const BoundaryCondition& boundary() const { return bc_; }
  const simd::KernelTable& kernels() const { return *kernels_; }
  GhostRule left_ghost() const { return left_; }
  GhostRule right_ghost() const { return right_; }

  /// Builds a consistent state (p = Pi_k(n), w from the potential solve).
  SimState make_state(Field n, double t = 0.0) const;

  /// Recomputes w from p (W = p when nu = 0).
  void update_potential(SimState& state) const;

  /// Largest dt with Courant number 1 for the current state.
  double stability_limit(const SimState& state) const;

  /// min(cfl * stability_limit, dt_max); always positive and finite.
  double stable_dt(const SimState& state, const TimeControls& controls) const;

  /// Advances in place. Throws CflError if dt exceeds stability_limit and
  /// SchemeError on negative (< -1e-14) or non-finite density; the state is
  /// untouched when either is thrown.
  StepReport step(SimState& state, double dt);

  /// Advances to controls.t_end, emitting events per schedule.
  SimState run(SimState initial, const TimeControls& controls, const RunSchedule& schedule,
               RunObserver& observer);
  SimState run(SimState initial, const TimeControls& controls, RunObserver& observer);

 private:
  struct Window {
    std::size_t lo = 0;  ///< first cell to update
    std::size_t hi = 0;  ///< one past the last cell to update
  };
  Window update_window(const Field& n) const;
  void face_velocities_into(const Field& w, Window win) const;
  double max_speed(const SimState& state) const;
  double growth_slope_bound() const;

  Grid1D grid_;
  ModelParams params_;
  BoundaryCondition bc_;
  const simd::KernelTable* kernels_;
  std::optional<PotentialSolver> solver_;
  GhostRule left_;
  GhostRule right_;

  // Workspace indexed by absolute face/cell number. A Simulator drives one
  // simulation at a time.
  mutable std::vector<double> u_;
  std::vector<double> flux_;
  std::vector<double> g_;
  std::vector<double> n_next_;
  std::vector<double> p_next_;
};

/// One-shot step on a copy of state.
SimState upwind_step(const SimState& state, double dt, const Grid1D& grid,
                     const ModelParams& params, BoundaryCondition bc = {});

double stable_dt(const SimState& state, const TimeControls& controls, const Grid1D& grid,
                 const ModelParams& params, BoundaryCondition bc = {});

/// Densities below this are flushed to zero after each step.
inline constexpr double kDensityFloor = 1e-300;
/// Negative densities above this are treated as rounding and clamped.
inline constexpr double kNegativeTolerance = 1e-14;

}  // namespace bhs

#include "bhs/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bhs/errors.hpp"

namespace bhs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<double> cadence(double t_end, double every) {
  std::vector<double> out{0.0};
  if (every > 0.0) {
    for (long j = 1;; ++j) {
      const double t = static_cast<double>(j) * every;
      if (t > t_end * (1.0 + 1e-12)) break;
      out.push_back(std::min(t, t_end));
    }
  }
  out.push_back(t_end);
  sort_unique(out);
  return out;
}

}  // namespace

void TimeControls::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw std::invalid_argument("dt_max must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (!(snapshot_every >= 0.0)) throw std::invalid_argument("snapshot_every must be >= 0");
}

RunSchedule RunSchedule::regular(double t_end, double snapshot_every, double sample_every,
                                 const std::vector<double>& extra_snapshots) {
  RunSchedule s;
  s.snapshot_times = cadence(t_end, snapshot_every);
  for (double t : extra_snapshots) {
    if (t >= 0.0 && t <= t_end) s.snapshot_times.push_back(t);
  }
  sort_unique(s.snapshot_times);
  s.sample_every_step = sample_every == 0.0;
  s.sample_times = cadence(t_end, sample_every);
  return s;
}

std::vector<double> face_velocities(const Field& w, const Grid1D& grid, GhostRule left,
                                    GhostRule right) {
  const std::size_t n = grid.size();
  if (w.size() != n) throw std::invalid_argument("face_velocities: size mismatch");
  const double dx = grid.dx();
  std::vector<double> u(n + 1);
  simd::scalar_kernels().face_velocity(w.span(), std::span(u).subspan(1, n - 1), 1.0 / dx);
  u[0] = -((w[0] - left.apply(w[0])) / dx);
  u[n] = -((right.apply(w[n - 1]) - w[n - 1]) / dx);
  return u;
}

std::vector<double> face_velocities(const Field& w, const Grid1D& grid, const ModelParams& params,
                                    BoundaryCondition bc) {
  if (params.is_darcy()) return face_velocities(w, grid, GhostRule{}, GhostRule{});
  return face_velocities(w, grid, ghost_rule(bc, false, params.nu, grid.dx()),
                         ghost_rule(bc, true, params.nu, grid.dx()));
}

Simulator::Simulator(const Grid1D& grid, const ModelParams& params, BoundaryCondition bc,
                     const simd::KernelTable& kernels)
    : grid_(grid), params_(params), bc_(bc), kernels_(&kernels) {
  params_.validate();
  if (!params_.is_darcy()) {
    solver_.emplace(grid_, params_.nu, bc_);
    left_ = solver_->left_ghost();
    right_ = solver_->right_ghost();
  }
  // Darcy: the exterior is empty tissue, W = p = 0 beyond the domain.
  const std::size_t n = grid_.size();
  u_.assign(n + 1, 0.0);
  flux_.assign(n + 1, 0.0);
  g_.assign(n, 0.0);
  n_next_.assign(n, 0.0);
  p_next_.assign(n, 0.0);
}

SimState Simulator::make_state(Field n, double t) const {
  if (n.size() != grid_.size()) throw std::invalid_argument("make_state: size mismatch");
  for (double v : n.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("make_state: density must be finite and nonnegative");
    }
  }
  SimState s;
  s.t = t;
  s.n = std::move(n);
  s.p = Field(grid_);
  kernels_->pressure(s.n.span(), s.p.span(), params_.k);
  update_potential(s);
  return s;
}

void Simulator::update_potential(SimState& state) const {
  if (solver_) {
    if (state.w.size() != grid_.size()) state.w = Field(grid_);
    solver_->solve(state.p.span(), state.w.span());
  } else {
    state.w = state.p;
  }
}

Simulator::Window Simulator::update_window(const Field& n) const {
  const std::size_t size = grid_.size();
  std::size_t first = 0;
  while (first < size && n[first] == 0.0) ++first;
  if (first == size) return {0, 0};
  std::size_t last = size - 1;
  while (n[last] == 0.0) --last;
  return {first > 0 ? first - 1 : 0, std::min(last + 2, size)};
}

void Simulator::face_velocities_into(const Field& w, Window win) const {
  const std::size_t size = grid_.size();
  const double dx = grid_.dx();
  const std::size_t fa = std::max<std::size_t>(win.lo, 1);
  const std::size_t fb = std::min(win.hi, size - 1);  // inclusive
  if (fb >= fa) {
    kernels_->face_velocity(w.span().subspan(fa - 1), std::span(u_).subspan(fa, fb - fa + 1),
                            1.0 / dx);
  }
  if (win.lo == 0) u_[0] = -((w[0] - left_.apply(w[0])) / dx);
  if (win.hi == size) u_[size] = -((right_.apply(w[size - 1]) - w[size - 1]) / dx);
}

double Simulator::max_speed(const SimState& state) const {
  const Window win = update_window(state.n);
  if (win.hi == win.lo) return 0.0;
  face_velocities_into(state.w, win);
  double m = 0.0;
  for (std::size_t f = win.lo; f <= win.hi; ++f) m = std::max(m, std::abs(u_[f]));
  return m;
}

double Simulator::growth_slope_bound() const {
  const auto& law = params_.growth;
  if (law.is_linear()) return 1.0;
  return std::max({std::abs(law.derivative(0.0)), std::abs(law.derivative(params_.p_max())),
                   law.alpha()});
}

double Simulator::stability_limit(const SimState& state) const {
  return stable_dt(state, TimeControls{1.0, kInf, 0.0, 0.0});
}

double Simulator::stable_dt(const SimState& state, const TimeControls& controls) const {
  const double dx = grid_.dx();
  const double km1 = params_.k - 1.0;
  const double speed = max_speed(state);

  double transport = kInf;
  if (params_.is_darcy()) {
    // W = p: the flux is a nonlinear diffusion with coefficient n Pi_k'(n) = (k-1) p.
    const Window win = update_window(state.n);
    const double max_p =
        win.hi > win.lo ? kernels_->max(state.p.span().subspan(win.lo, win.hi - win.lo)) : 0.0;
    const double rate = speed / dx + 2.0 * km1 * std::max(max_p, 0.0) / (dx * dx);
    if (rate > 0.0) transport = 1.0 / rate;
  } else {
    if (speed > 0.0) transport = dx / speed;
    // Pressure relaxation rate (k-1) p (1 + nu |G'|) / nu.
    const double relax = params_.nu /
                         (km1 * params_.p_max() * std::max(1.0, growth_slope_bound() * params_.nu));
    transport = std::min(transport, relax);
  }
  const double g0 = std::abs(params_.growth(0.0));
  const double reaction = g0 > 0.0 ? 1.0 / g0 : kInf;

  double dt = controls.cfl * std::min(transport, reaction);
  dt = std::min(dt, controls.dt_max);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw SchemeError("stable_dt: no finite positive step for the current state");
  }
  return dt;
}

StepReport Simulator::step(SimState& state, double dt) {
  const std::size_t size = grid_.size();
  const double dx = grid_.dx();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw CflError("step: dt must be positive and finite");

  const double limit = stability_limit(state);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "step rejected: dt=" << dt << " exceeds stability limit " << limit;
    throw CflError(msg.str());
  }

  StepReport report;
  report.dt = dt;
  const Window win = update_window(state.n);
  if (win.hi == win.lo) {
    state.t += dt;
    report.t = state.t;
    return report;
  }
  const std::size_t count = win.hi - win.lo;
  auto n_win = state.n.span().subspan(win.lo, count);
  auto p_win = state.p.span().subspan(win.lo, count);

  face_velocities_into(state.w, win);

  // Fluxes on faces lo..hi; outer faces see an empty exterior.
  const std::size_t fa = std::max<std::size_t>(win.lo, 1);
  const std::size_t fb = std::min(win.hi, size - 1);
  if (fb >= fa) {
    kernels_->upwind_flux(std::span<const double>(u_).subspan(fa, fb - fa + 1),
                          state.n.span().subspan(fa - 1), std::span(flux_).subspan(fa, fb - fa + 1));
  }
  if (win.lo == 0) flux_[0] = std::min(u_[0], 0.0) * state.n[0];
  if (win.hi == size) flux_[size] = std::max(u_[size], 0.0) * state.n[size - 1];

  auto g_win = std::span(g_).subspan(win.lo, count);
  const auto& law = params_.growth;
  if (law.is_linear()) {
    kernels_->affine_growth(p_win, g_win, law.homeostatic_pressure(), -1.0);
  } else {
    for (std::size_t i = 0; i < count; ++i) g_win[i] = law(p_win[i]);
  }

  auto next = std::span(n_next_).subspan(win.lo, count);
  kernels_->upwind_update(n_win, std::span<const double>(flux_).subspan(win.lo, count + 1), g_win,
                          next, dt / dx, dt);

  double growth_sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    growth_sum += (dt * n_win[i]) * g_win[i];
    double& v = next[i];
    if (v < kDensityFloor) {
      if (!(v >= -kNegativeTolerance)) {
        const std::size_t cell = win.lo + i;
        std::ostringstream msg;
        msg.precision(17);
        msg << "scheme error at t=" << state.t << " dt=" << dt << ": density " << v
            << " in cell " << cell << " (x=" << grid_.center(cell) << ")"
            << " n_old=" << state.n[cell] << " p_old=" << state.p[cell]
            << " u_left=" << u_[cell] << " u_right=" << u_[cell + 1];
        throw SchemeError(msg.str());
      }
      v = 0.0;
    }
  }

  auto p_next = std::span(p_next_).subspan(win.lo, count);
  kernels_->pressure(next, p_next, params_.k);
  const double p_peak = kernels_->max(p_next);
  if (!std::isfinite(p_peak)) {
    std::ostringstream msg;
    msg << "scheme error at t=" << state.t << ": pressure overflow (max " << p_peak << ")";
    throw SchemeError(msg.str());
  }

  report.max_p = p_peak;
  report.mass_before = kernels_->sum(n_win) * dx;
  report.growth = growth_sum * dx;
  report.outflow = dt * (flux_[win.hi] * (win.hi == size) - flux_[win.lo] * (win.lo == 0));

  std::copy(next.begin(), next.end(), n_win.begin());
  std::copy(p_next.begin(), p_next.end(), p_win.begin());
  report.mass_after = kernels_->sum(n_win) * dx;

  update_potential(state);
  state.t += dt;
  report.t = state.t;
  return report;
}

SimState Simulator::run(SimState initial, const TimeControls& controls, RunObserver& observer) {
  return run(std::move(initial), controls,
             RunSchedule::regular(controls.t_end, controls.snapshot_every, 0.0), observer);
}

SimState Simulator::run(SimState state, const TimeControls& controls, const RunSchedule& schedule,
                        RunObserver& observer) {
  controls.validate();
  const double t_end = controls.t_end;
  const auto& snaps = schedule.snapshot_times;
  const auto& samples = schedule.sample_times;
  std::size_t si = 0;
  std::size_t qi = 0;

  auto emit_due = [&]() {
    bool sampled = false;
    while (qi < samples.size() && samples[qi] <= state.t) {
      if (!sampled && samples[qi] == state.t) {
        observer.on_sample(state);
        sampled = true;
      }
      ++qi;
    }
    while (si < snaps.size() && snaps[si] <= state.t) {
      if (snaps[si] == state.t) observer.on_snapshot(state);
      ++si;
    }
    return sampled;
  };

  emit_due();
  try {
    while (state.t < t_end) {
      double target = t_end;
      if (si < snaps.size()) target = std::min(target, snaps[si]);
      if (qi < samples.size()) target = std::min(target, samples[qi]);

      double dt = stable_dt(state, controls);
      bool land = false;
      if (state.t + dt >= target) {
        dt = target - state.t;
        land = true;
      }
      const StepReport report = step(state, dt);
      if (land) state.t = target;
      observer.on_step(report);
      const bool sampled = emit_due();
      if (schedule.sample_every_step && !sampled) observer.on_sample(state);
    }
  } catch (const std::exception& e) {
    observer.on_abort(state, e);
    throw;
  }
  return state;
}

SimState upwind_step(const SimState& state, double dt, const Grid1D& grid,
                     const ModelParams& params, BoundaryCondition bc) {
  Simulator sim(grid, params, bc);
  SimState next = state;
  sim.step(next, dt);
  return next;
}

double stable_dt(const SimState& state, const TimeControls& controls, const Grid1D& grid,
                 const ModelParams& params, BoundaryCondition bc) {
  return Simulator(grid, params, bc).stable_dt(state, controls);
}

}  // namespace bhs

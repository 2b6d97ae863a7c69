#include "bhs/wave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhs {

ModelParams TravelingWave::limit_params() const {
  return ModelParams{100.0, nu, GrowthLaw::linear(p_max)};
}

TravelingWave build_wave(double nu, double p_max) {
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw std::domain_error("build_wave: p_max must be positive");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::domain_error("build_wave: nu must be nonnegative");
  }
  const double sn = std::sqrt(nu);
  const double sn1 = std::sqrt(nu + 1.0);
  TravelingWave wave;
  wave.nu = nu;
  wave.p_max = p_max;
  wave.w0 = sn / (sn + sn1) * p_max;
  wave.sigma = p_max / (sn + sn1);
  wave.jump = p_max * (1.0 - 1.0 / (nu + 1.0 + std::sqrt(nu * (nu + 1.0))));
  return wave;
}

namespace {

void require_viscous(const TravelingWave& wave) {
  if (!(wave.nu > 0.0)) {
    throw std::domain_error("traveling wave profiles need nu > 0");
  }
}

// Tumor side, x <= 0.
double inner_potential(const TravelingWave& wave, double x) {
  const double ratio = std::sqrt(wave.nu / (wave.nu + 1.0));
  return wave.p_max * (1.0 - std::exp(x / std::sqrt(wave.nu + 1.0)) / (1.0 + ratio));
}

double inner_pressure(const TravelingWave& wave, double x) {
  const double nu = wave.nu;
  return wave.p_max *
         (1.0 - std::exp(x / std::sqrt(nu + 1.0)) / (nu + 1.0 + std::sqrt(nu * (nu + 1.0))));
}

}  // namespace

WaveSample eval_profiles(const TravelingWave& wave, double x) {
  require_viscous(wave);
  if (x > 0.0) return {0.0, 0.0, wave.w0 * std::exp(-x / std::sqrt(wave.nu))};
  if (x == 0.0) return {1.0, inner_pressure(wave, 0.0), wave.w0};
  return {1.0, inner_pressure(wave, x), inner_potential(wave, x)};
}

double potential_slope(const TravelingWave& wave, double x, bool from_left) {
  require_viscous(wave);
  const double sn = std::sqrt(wave.nu);
  const double sn1 = std::sqrt(wave.nu + 1.0);
  if (x > 0.0 || (x == 0.0 && !from_left)) return -wave.w0 / sn * std::exp(-x / sn);
  const double ratio = sn / sn1;
  return -wave.p_max / ((1.0 + ratio) * sn1) * std::exp(x / sn1);
}

double verify_wave_odes(const TravelingWave& wave, double dx) {
  require_viscous(wave);
  if (!(dx > 0.0)) throw std::invalid_argument("verify_wave_odes: dx must be positive");
  const ModelParams limit = wave.limit_params();
  const double reach = 20.0 * std::sqrt(wave.nu + 1.0);
  const long half = static_cast<long>(std::ceil(reach / dx));
  const double nu = wave.nu;

  auto w_at = [&](long j) { return eval_profiles(wave, static_cast<double>(j) * dx).w; };

  double worst = 0.0;
  for (long j = -half; j <= half; ++j) {
    if (j == 0) continue;
    const double wm = w_at(j - 1);
    const double wc = w_at(j);
    const double wp = w_at(j + 1);
    const double lap = (wm - 2.0 * wc + wp) / (dx * dx);
    double residual = -nu * lap + wc;
    if (j < 0) residual -= h_map(wc, limit);
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

WaveFields sample_wave(const TravelingWave& wave, const Grid1D& grid, double front) {
  WaveFields out{Field(grid), Field(grid), Field(grid)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const WaveSample s = eval_profiles(wave, grid.center(i) - front);
    out.n[i] = s.n;
    out.p[i] = s.p;
    out.w[i] = s.w;
  }
  return out;
}

}  // namespace bhs

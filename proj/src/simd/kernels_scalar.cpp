#include <algorithm>
#include <cfloat>
#include <cmath>

#include "bhs/simd/kernels.hpp"

namespace bhs::simd {
namespace {

void pressure(std::span<const double> n, std::span<double> p, double k) {
  const double km1 = k - 1.0;
  const double coef = k / km1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    p[i] = n[i] < DBL_MIN ? 0.0 : coef * std::exp(km1 * std::log(n[i]));
  }
}

void face_velocity(std::span<const double> w, std::span<double> u, double inv_dx) {
  for (std::size_t f = 0; f < u.size(); ++f) {
    u[f] = -((w[f + 1] - w[f]) * inv_dx);
  }
}

void upwind_flux(std::span<const double> u, std::span<const double> n, std::span<double> flux) {
  for (std::size_t f = 0; f < u.size(); ++f) {
    const double up = std::max(u[f], 0.0) * n[f];
    const double down = std::min(u[f], 0.0) * n[f + 1];
    flux[f] = up + down;
  }
}

void affine_growth(std::span<const double> p, std::span<double> g, double g0, double g1) {
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = g0 + g1 * p[i];
}

void upwind_update(std::span<const double> n, std::span<const double> flux,
                   std::span<const double> g, std::span<double> out, double ratio, double dt) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double div = ratio * (flux[i + 1] - flux[i]);
    const double react = (dt * n[i]) * g[i];
    out[i] = (n[i] - div) + react;
  }
}

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

double max(std::span<const double> v) {
  double m = -HUGE_VAL;
  for (double x : v) m = std::max(m, x);
  return m;
}

double weighted_abs_residual(std::span<const double> p, std::span<const double> w, double nu,
                             double g0, double g1) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = (w[i] - p[i]) + nu * (g0 + g1 * p[i]);
    acc += p[i] * std::abs(q);
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::Scalar, "scalar", pressure,  face_velocity,
                                 upwind_flux,     affine_growth, upwind_update, sum,
                                 max,             weighted_abs_residual};
  return table;
}

}  // namespace bhs::simd

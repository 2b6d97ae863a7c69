#pragma once

// Data-parallel inner loops of the time stepper.
//
// Each backend provides the same table. The scalar table is the reference;
// vector tables must agree with it bit-for-bit on the linear kernels
// (face_velocity, upwind_flux, affine_growth, upwind_update) and to a few ulp
// on the transcendental pressure kernel and on reductions, whose summation
// order differs.

#include <span>
#include <string_view>
#include <vector>

namespace bhs::simd {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  Backend backend;
  std::string_view name;

  /// p[i] = k/(k-1) n[i]^(k-1); inputs below DBL_MIN map to 0.
  void (*pressure)(std::span<const double> n, std::span<double> p, double k);

  /// u[f] = -(w[f+1] - w[f]) * inv_dx for f < u.size(); w.size() >= u.size() + 1.
  void (*face_velocity)(std::span<const double> w, std::span<double> u, double inv_dx);

  /// flux[f] = max(u[f],0) n[f] + min(u[f],0) n[f+1]; n.size() >= u.size() + 1.
  void (*upwind_flux)(std::span<const double> u, std::span<const double> n,
                      std::span<double> flux);

  /// g[i] = g0 + g1 p[i] for i < g.size().
  void (*affine_growth)(std::span<const double> p, std::span<double> g, double g0, double g1);

  /// out[i] = n[i] - ratio (flux[i+1] - flux[i]) + (dt n[i]) g[i] for i < out.size().
  void (*upwind_update)(std::span<const double> n, std::span<const double> flux,
                        std::span<const double> g, std::span<double> out, double ratio,
                        double dt);

  double (*sum)(std::span<const double> v);
  double (*max)(std::span<const double> v);

  /// Sum of p[i] |w[i] - p[i] + nu (g0 + g1 p[i])|.
  double (*weighted_abs_residual)(std::span<const double> p, std::span<const double> w,
                                  double nu, double g0, double g1);
};

const KernelTable& scalar_kernels();

/// True when the AVX2 table was compiled in and the CPU supports it.
bool avx2_available();

/// Throws std::runtime_error when the backend is unavailable.
const KernelTable& kernels(Backend backend);

/// Best available backend, overridable with BHS_KERNELS=scalar|avx2.
const KernelTable& active_kernels();

std::vector<Backend> available_backends();

}  // namespace bhs::simd

#pragma once

// Closed-form k = infinity traveling wave for the linear growth law
// G(p) = P_M - p. Front frame: the tumor (n = 1) occupies x < 0, the
// interface sits at x = 0 and the wave moves towards +x at speed sigma.

#include "bhs/grid.hpp"
#include "bhs/model.hpp"

namespace bhs {

struct TravelingWave {
  double nu = 1.0;
  double p_max = 1.0;
  double w0 = 0.0;     ///< potential at the interface
  double sigma = 0.0;  ///< wave speed, equal to -W'(0)
  double jump = 0.0;   ///< pressure jump p(0-) - p(0+)

  /// Limit model parameters (linear law); k is irrelevant for H.
  ModelParams limit_params() const;
};

/// Throws std::domain_error for p_max <= 0 or nu < 0.
TravelingWave build_wave(double nu, double p_max);

struct WaveSample {
  double n = 0.0;
  double p = 0.0;
  double w = 0.0;
};

/// Profiles at x in the front frame. At x = 0 returns the tumor-side limits of
/// (n, p) and w = W_0. Requires nu > 0.
WaveSample eval_profiles(const TravelingWave& wave, double x);

/// W'(x); at x = 0 the one-sided derivative from the chosen side.
double potential_slope(const TravelingWave& wave, double x, bool from_left = false);

/// Max residual of -nu W'' + W = 0 (x > 0) and -nu W'' + W - H(W) = 0 (x < 0)
/// with centered differences of step dx on the sampled profile. Stencils never
/// straddle the interface.
double verify_wave_odes(const TravelingWave& wave, double dx);

/// Cell-center samples of the wave with the interface at x = front.
struct WaveFields {
  Field n;
  Field p;
  Field w;
};
WaveFields sample_wave(const TravelingWave& wave, const Grid1D& grid, double front = 0.0);

}  // namespace bhs

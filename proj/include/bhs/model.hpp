#pragma once

// Model parameters, stiff pressure law and growth law for the
// Brinkman-regularized tumor growth model
//
//   dn/dt - d/dx(n dW/dx) = n G(p),   -nu W'' + W = p,   p = Pi_k(n).

#include <functional>
#include <memory>

namespace bhs {

/// Growth rate as a function of pressure.
///
/// Every law satisfies G(P_M) = 0 and G'(p) <= -alpha < 0. The linear law
/// G(p) = P_M - p (alpha = 1) is the one used by the simulator and the CLI;
/// custom laws exist for library users and for exercising the general
/// root-finding path of h_map.
class GrowthLaw {
 public:
  enum class Kind { Linear, Custom };

  static GrowthLaw linear(double p_max);
  static GrowthLaw custom(std::function<double(double)> rate,
                          std::function<double(double)> slope, double p_max,
                          double alpha);

  double operator()(double p) const;
  double derivative(double p) const;

  Kind kind() const { return kind_; }
  bool is_linear() const { return kind_ == Kind::Linear; }
  double homeostatic_pressure() const { return p_max_; }
  double alpha() const { return alpha_; }

 private:
  GrowthLaw() = default;

  Kind kind_ = Kind::Linear;
  double p_max_ = 1.0;
  double alpha_ = 1.0;
  // Shared so that copies of ModelParams stay cheap and thread-safe to read.
  std::shared_ptr<const std::function<double(double)>> rate_;
  std::shared_ptr<const std::function<double(double)>> slope_;
};

struct ModelParams {
  double k = 100.0;  ///< stiffness exponent, k > 2
  double nu = 1.0;   ///< Brinkman viscosity, nu >= 0 (0 selects Darcy)
  GrowthLaw growth = GrowthLaw::linear(1.0);

  static ModelParams linear(double k, double nu, double p_max);

  double p_max() const { return growth.homeostatic_pressure(); }
  bool is_darcy() const { return nu == 0.0; }

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Pi_k(n) = k/(k-1) n^(k-1), evaluated in log space.
/// Throws std::domain_error for negative or non-finite n.
double pressure_of_density(double n, const ModelParams& params);

/// Inverse of the pressure law: ((k-1) p / k)^(1/(k-1)).
double density_of_pressure(double p, const ModelParams& params);

double growth(double p, const GrowthLaw& law);

/// H = (I - nu G)^{-1}. Closed form for the linear law, bracketed
/// bisection followed by Newton (|dp| < 1e-12) otherwise.
double h_map(double w, const ModelParams& params);

/// Minimal positive limit pressure p_m = H(0).
double min_limit_pressure(const ModelParams& params);

/// Q = w - p + nu G(p); vanishes exactly when p = H(w).
double q_residual(double p, double w, const ModelParams& params);

}  // namespace bhs

#include "bhs/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace bhs {

GrowthLaw GrowthLaw::linear(double p_max) {
  if (!(p_max > 0.0) || !std::isfinite(p_max)) {
    throw std::invalid_argument("p_max must be positive and finite");
  }
  GrowthLaw law;
  law.kind_ = Kind::Linear;
  law.p_max_ = p_max;
  law.alpha_ = 1.0;
  return law;
}

GrowthLaw GrowthLaw::custom(std::function<double(double)> rate,
                            std::function<double(double)> slope, double p_max,
                            double alpha) {
  if (!rate || !slope) {
    throw std::invalid_argument("custom growth law needs rate and slope");
  }
  if (!(p_max > 0.0) || !(alpha > 0.0)) {
    throw std::invalid_argument("custom growth law needs p_max > 0, alpha > 0");
  }
  GrowthLaw law;
  law.kind_ = Kind::Custom;
  law.p_max_ = p_max;
  law.alpha_ = alpha;
  law.rate_ = std::make_shared<const std::function<double(double)>>(std::move(rate));
  law.slope_ = std::make_shared<const std::function<double(double)>>(std::move(slope));
  return law;
}

double GrowthLaw::operator()(double p) const {
  if (kind_ == Kind::Linear) return p_max_ - p;
  return (*rate_)(p);
}

double GrowthLaw::derivative(double p) const {
  if (kind_ == Kind::Linear) return -1.0;
  return (*slope_)(p);
}

ModelParams ModelParams::linear(double k, double nu, double p_max) {
  ModelParams params{k, nu, GrowthLaw::linear(p_max)};
  params.validate();
  return params;
}

void ModelParams::validate() const {
  if (!(k > 2.0) || !std::isfinite(k)) {
    throw std::invalid_argument("k must exceed 2 (got " + std::to_string(k) + ")");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("nu must be nonnegative (got " + std::to_string(nu) + ")");
  }
  if (!(p_max() > 0.0)) {
    throw std::invalid_argument("p_max must be positive");
  }
}

double pressure_of_density(double n, const ModelParams& params) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw std::domain_error("pressure_of_density: density must be finite and >= 0");
  }
  if (n == 0.0) return 0.0;
  const double km1 = params.k - 1.0;
  return params.k / km1 * std::exp(km1 * std::log(n));
}

double density_of_pressure(double p, const ModelParams& params) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw std::domain_error("density_of_pressure: pressure must be finite and >= 0");
  }
  if (p == 0.0) return 0.0;
  const double km1 = params.k - 1.0;
  return std::exp(std::log(km1 * p / params.k) / km1);
}

double growth(double p, const GrowthLaw& law) { return law(p); }

namespace {

// Root of f(p) = p - nu G(p) - w. f' >= 1 + nu alpha > 1, so the root lies
// within |f(0)| of the origin.
double invert_general(double w, const ModelParams& params) {
  const auto& law = params.growth;
  const double nu = params.nu;
  auto f = [&](double p) { return p - nu * law(p) - w; };

  const double f0 = f(0.0);
  if (f0 == 0.0) return 0.0;
  double lo = f0 < 0.0 ? 0.0 : -f0;
  double hi = f0 < 0.0 ? -f0 : 0.0;
  double flo = f(lo);
  double fhi = f(hi);
  if (!(flo <= 0.0 && fhi >= 0.0)) {
    throw std::domain_error("h_map: root not bracketed; growth law violates G' <= -alpha");
  }

  constexpr double kTol = 1e-12;
  for (int it = 0; it < 40 && hi - lo > 1e-3 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }

  double p = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fp = f(p);
    if (fp == 0.0) return p;
    (fp < 0.0 ? lo : hi) = p;
    double next = p - fp / (1.0 - nu * law.derivative(p));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - p);
    p = next;
    if (step < kTol || hi - lo < kTol) return p;
  }
  throw std::domain_error("h_map: Newton iteration did not converge");
}

}  // namespace

double h_map(double w, const ModelParams& params) {
  if (!std::isfinite(w)) throw std::domain_error("h_map: non-finite argument");
  if (params.nu == 0.0) return w;
  if (params.growth.is_linear()) {
    return (w + params.nu * params.p_max()) / (1.0 + params.nu);
  }
  return invert_general(w, params);
}

double min_limit_pressure(const ModelParams& params) { return h_map(0.0, params); }

double q_residual(double p, double w, const ModelParams& params) {
  return w - p + params.nu * params.growth(p);
}

}  // namespace bhs

#include <cmath>
#include <stdexcept>

#include "bhs/model.hpp"
#include "doctest.h"

using namespace bhs;

namespace {
const ModelParams k100 = ModelParams::linear(100.0, 1.0, 1.0);
}

TEST_CASE("pressure law against high-precision values") {
  // Reference values from 30-digit arithmetic.
  CHECK(pressure_of_density(1.01, k100) == doctest::Approx(2.70508433785531162).epsilon(1e-13));
  CHECK(pressure_of_density(1.0, k100) == doctest::Approx(1.01010101010101010).epsilon(1e-15));
  CHECK(pressure_of_density(0.0, k100) == 0.0);

  const double k_values[] = {25, 50, 100, 200};
  const double below[] = {0.0830900448717, 0.00584328254798, 2.98107731623e-5, 7.87836863055e-10};
  const double above[] = {10.260138204, 108.896895065, 12654.3731311, 173508703.938};
  for (int i = 0; i < 4; ++i) {
    const ModelParams m = ModelParams::linear(k_values[i], 1.0, 1.0);
    CHECK(pressure_of_density(0.9, m) == doctest::Approx(below[i]).epsilon(1e-10));
    CHECK(pressure_of_density(1.1, m) == doctest::Approx(above[i]).epsilon(1e-10));
  }
}

TEST_CASE("density_of_pressure inverts the pressure law") {
  for (double n : {1e-3, 0.3, 0.97, 1.0, 1.004}) {
    CHECK(density_of_pressure(pressure_of_density(n, k100), k100) == doctest::Approx(n).epsilon(1e-13));
  }
  CHECK(density_of_pressure(0.0, k100) == 0.0);
  CHECK_THROWS_AS(density_of_pressure(-1.0, k100), std::domain_error);
}

TEST_CASE("model parameters are validated") {
  CHECK_THROWS_AS(ModelParams::linear(2.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::linear(100.0, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::linear(100.0, 1.0, 0.0), std::invalid_argument);
  CHECK(ModelParams::linear(100.0, 0.0, 1.0).is_darcy());
}

TEST_CASE("H map and Q residual") {
  SUBCASE("linear closed form") {
    // H(w) = (w + nu P_M) / (1 + nu)
    CHECK(h_map(0.0, k100) == doctest::Approx(0.5));
    CHECK(min_limit_pressure(k100) == doctest::Approx(0.5));
    for (double w : {0.0, 0.2, 0.41421356237309505, 0.9}) {
      CHECK(std::abs(q_residual(h_map(w, k100), w, k100)) < 1e-15);
    }
  }
  SUBCASE("darcy is the identity") {
    const ModelParams d = ModelParams::linear(100.0, 0.0, 2.0);
    CHECK(h_map(0.37, d) == 0.37);
  }
  SUBCASE("nonlinear law solved numerically") {
    // G(p) = 2(1 - p) + (1 - p)^3, G' <= -2, G(1) = 0.
    ModelParams m = k100;
    m.growth = GrowthLaw::custom([](double p) { return 2.0 * (1.0 - p) + std::pow(1.0 - p, 3); },
                                 [](double p) { return -2.0 - 3.0 * (1.0 - p) * (1.0 - p); },
                                 1.0, 2.0);
    for (double w : {0.0, 0.3, 0.8}) {
      const double p = h_map(w, m);
      CHECK(std::abs(q_residual(p, w, m)) < 1e-12);
    }
  }
  CHECK(growth(0.25, k100.growth) == doctest::Approx(0.75));
}

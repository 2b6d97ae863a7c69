#include <cmath>
#include <numbers>

#include "bhs/elliptic.hpp"
#include "bhs/selfcheck.hpp"
#include "doctest.h"

using namespace bhs;

TEST_CASE("Thomas solve matches the kernel convolution oracle") {
  const Grid1D grid = Grid1D::symmetric(12.0, 0.01);
  const ModelParams params = ModelParams::linear(100.0, 1.0, 1.0);
  Field p(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.center(i);
    p[i] = std::abs(x) < 1.5 ? 0.7 + 0.2 * std::cos(2.0 * x) : 0.0;
  }
  const Field direct = solve_potential(p, grid, params);
  const Field oracle = kernel_convolve(p, grid, params);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(direct[i] - oracle[i]));
  CHECK(err < 1e-4);
}

TEST_CASE("manufactured solution converges at second order") {
  for (double nu : {0.25, 1.0, 4.0}) {
    CHECK(manufactured_order(nu, 64) == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("solver reuses its factorization") {
  const Grid1D grid(-5.0, 5.0, 100);
  PotentialSolver solver(grid, 0.5, BoundaryCondition::robin());
  Field a(grid, 1.0);
  Field b(grid, 2.0);
  const Field wa = solver.solve(a);
  const Field wb = solver.solve(b);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(wb[i] == doctest::Approx(2.0 * wa[i]));
}

TEST_CASE("kernel properties") {
  CHECK(brinkman_kernel(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(brinkman_kernel(2.0, 4.0) == doctest::Approx(std::exp(-1.0) / 4.0));
  const Grid1D grid = Grid1D::symmetric(20.0, 0.01);
  CHECK(std::abs(kernel_mass(grid, 0.005, 1.0) - 1.0) < 1e-8);
  // Whole-line integral of K splits evenly at x.
  CHECK(kernel_cell_weight(0.0, -50.0, 0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("ghost rules") {
  const GhostRule robin = ghost_rule(BoundaryCondition::robin(), true, 1.0, 0.1);
  CHECK(robin.apply(1.0) == doctest::Approx((2.0 - 0.1) / (2.0 + 0.1)));
  const GhostRule dir = ghost_rule(BoundaryCondition::dirichlet(0.5, -1.0), false, 1.0, 0.1);
  CHECK(dir.apply(0.2) == doctest::Approx(2.0 * 0.5 - 0.2));
}

TEST_CASE("invalid inputs") {
  const Grid1D grid(-1.0, 1.0, 10);
  CHECK_THROWS(PotentialSolver(grid, 0.0, BoundaryCondition::robin()));
  Field p(grid, 1.0);
  p[3] = std::nan("");
  CHECK_THROWS(solve_potential(p, grid, ModelParams::linear(100.0, 1.0, 1.0)));
  CHECK(darcy_potential(Field(grid, 0.3))[5] == 0.3);
}

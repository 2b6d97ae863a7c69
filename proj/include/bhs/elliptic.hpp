#pragma once

// Brinkman potential: -nu W'' + W = p on a truncated interval.

#include <span>
#include <vector>

#include "bhs/grid.hpp"
#include "bhs/model.hpp"

namespace bhs {

enum class BoundaryKind {
  Robin,      ///< W' = -W/sqrt(nu) at x_max and +W/sqrt(nu) at x_min
  Dirichlet,  ///< prescribed face values (homogeneous by default)
};

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Robin;
  double left = 0.0;   ///< Dirichlet value at x_min
  double right = 0.0;  ///< Dirichlet value at x_max

  static BoundaryCondition robin() { return {}; }
  static BoundaryCondition dirichlet(double left = 0.0, double right = 0.0) {
    return {BoundaryKind::Dirichlet, left, right};
  }
};

/// Ghost cell closure W_ghost = scale * W_edge + offset, one per side.
struct GhostRule {
  double scale = 0.0;
  double offset = 0.0;

  double apply(double edge) const { return scale * edge + offset; }
};

/// Centered second-order finite-difference solver for the Brinkman equation.
///
/// The matrix only depends on (grid, nu, bc), so the Thomas factorization is
/// done once and reused across time steps. Instances are immutable after
/// construction; solve() may be called concurrently.
class PotentialSolver {
 public:
  PotentialSolver(const Grid1D& grid, double nu, BoundaryCondition bc = {});

  void solve(std::span<const double> p, std::span<double> w) const;
  Field solve(const Field& p) const;

  const Grid1D& grid() const { return grid_; }
  double nu() const { return nu_; }
  const BoundaryCondition& boundary() const { return bc_; }
  GhostRule left_ghost() const { return left_; }
  GhostRule right_ghost() const { return right_; }

 private:
  Grid1D grid_;
  double nu_;
  BoundaryCondition bc_;
  GhostRule left_;
  GhostRule right_;
  double off_;                      // off-diagonal magnitude nu/dx^2
  std::vector<double> upper_;       // c'_i of the forward sweep
  std::vector<double> inv_pivot_;   // 1 / (b_i - a c'_{i-1})
};

/// Ghost rule of the selected closure, shared with the transport face velocities.
GhostRule ghost_rule(const BoundaryCondition& bc, bool right_side, double nu, double dx);

/// One-shot solve. Requires nu > 0 and finite p.
Field solve_potential(const Field& p, const Grid1D& grid, const ModelParams& params,
                      BoundaryCondition bc = {});

/// Darcy closure (nu = 0): W = p.
Field darcy_potential(const Field& p);

/// Free-space fundamental solution of -nu K'' + K = delta.
double brinkman_kernel(double x, double nu);

/// Integral of K(x - y) over y in [lo, hi], evaluated in closed form.
double kernel_cell_weight(double x, double lo, double hi, double nu);

/// Total kernel mass seen from x over every cell of the grid.
double kernel_mass(const Grid1D& grid, double x, double nu);

/// W = K * p with p piecewise constant on cells. Dense O(N^2); an oracle for
/// PotentialSolver, not a production path.
Field kernel_convolve(const Field& p, const Grid1D& grid, const ModelParams& params);

}  // namespace bhs

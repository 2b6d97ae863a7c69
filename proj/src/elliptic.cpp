#include "bhs/elliptic.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace bhs {

GhostRule ghost_rule(const BoundaryCondition& bc, bool right_side, double nu, double dx) {
  if (bc.kind == BoundaryKind::Dirichlet) {
    // Face value is the mean of edge and ghost.
    return {-1.0, 2.0 * (right_side ? bc.right : bc.left)};
  }
  // Robin: (W_g - W_e)/dx = -(W_g + W_e)/(2 sqrt(nu)) in the outward direction.
  const double s = std::sqrt(nu);
  return {(2.0 * s - dx) / (2.0 * s + dx), 0.0};
}

PotentialSolver::PotentialSolver(const Grid1D& grid, double nu, BoundaryCondition bc)
    : grid_(grid), nu_(nu), bc_(bc) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw std::invalid_argument("PotentialSolver: nu must be positive (use darcy_potential)");
  }
  const double dx = grid.dx();
  left_ = ghost_rule(bc, false, nu, dx);
  right_ = ghost_rule(bc, true, nu, dx);
  off_ = nu / (dx * dx);

  const std::size_t n = grid.size();
  upper_.resize(n);
  inv_pivot_.resize(n);
  double prev_upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 1.0 + 2.0 * off_;
    if (i == 0) diag -= off_ * left_.scale;
    if (i + 1 == n) diag -= off_ * right_.scale;
    const double pivot = diag + off_ * prev_upper;  // lower entry is -off_
    assert(pivot > 0.0);
    inv_pivot_[i] = 1.0 / pivot;
    upper_[i] = -off_ * inv_pivot_[i];
    prev_upper = upper_[i];
  }
}

void PotentialSolver::solve(std::span<const double> p, std::span<double> w) const {
  const std::size_t n = grid_.size();
  if (p.size() != n || w.size() != n) {
    throw std::invalid_argument("PotentialSolver::solve: size mismatch");
  }
  // Forward sweep writes d'_i into w.
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rhs = p[i];
    if (i == 0) rhs += off_ * left_.offset;
    if (i + 1 == n) rhs += off_ * right_.offset;
    prev = (rhs + off_ * prev) * inv_pivot_[i];
    w[i] = prev;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    w[i] -= upper_[i] * w[i + 1];
  }
}

Field PotentialSolver::solve(const Field& p) const {
  Field w(grid_);
  solve(p.span(), w.span());
  return w;
}

Field solve_potential(const Field& p, const Grid1D& grid, const ModelParams& params,
                      BoundaryCondition bc) {
  if (p.size() != grid.size()) throw std::invalid_argument("solve_potential: size mismatch");
  if (!p.all_finite()) throw std::invalid_argument("solve_potential: non-finite pressure");
  return PotentialSolver(grid, params.nu, bc).solve(p);
}

Field darcy_potential(const Field& p) { return p; }

double brinkman_kernel(double x, double nu) {
  const double s = std::sqrt(nu);
  return std::exp(-std::abs(x) / s) / (2.0 * s);
}

double kernel_cell_weight(double x, double lo, double hi, double nu) {
  const double s = std::sqrt(nu);
  // One-sided integral of e^{-|x-y|/s}/(2s) for y on one side of x.
  auto side = [s](double near, double far) {
    return 0.5 * (std::exp(-near / s) - std::exp(-far / s));
  };
  if (lo >= x) return side(lo - x, hi - x);
  if (hi <= x) return side(x - hi, x - lo);
  return side(0.0, hi - x) + side(0.0, x - lo);
}

double kernel_mass(const Grid1D& grid, double x, double nu) {
  double total = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    total += kernel_cell_weight(x, grid.face(j), grid.face(j + 1), nu);
  }
  return total;
}

Field kernel_convolve(const Field& p, const Grid1D& grid, const ModelParams& params) {
  if (!(params.nu > 0.0)) throw std::invalid_argument("kernel_convolve: nu must be positive");
  if (p.size() != grid.size()) throw std::invalid_argument("kernel_convolve: size mismatch");
  const std::size_t n = grid.size();
  const double dx = grid.dx();

  // Weight depends on |i - j| only on a uniform grid.
  std::vector<double> weight(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double lo = (static_cast<double>(m) - 0.5) * dx;
    weight[m] = kernel_cell_weight(0.0, lo, lo + dx, params.nu);
  }

  Field w(grid);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p[j] == 0.0) continue;
      acc += weight[i > j ? i - j : j - i] * p[j];
    }
    w[i] = acc;
  }
  return w;
}

}  // namespace bhs

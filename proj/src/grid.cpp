#include "bhs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhs {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells) {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw std::invalid_argument("Grid1D: need finite x_min < x_max");
  }
  if (n_cells < 4) throw std::invalid_argument("Grid1D: need at least 4 cells");
  dx_ = (x_max - x_min) / static_cast<double>(n_cells);
}

Grid1D Grid1D::symmetric(double half_width, double dx) {
  if (!(half_width > 0.0) || !(dx > 0.0)) {
    throw std::invalid_argument("Grid1D: half width and dx must be positive");
  }
  const double cells = std::round(2.0 * half_width / dx);
  if (cells < 4.0 || cells > 1e9) throw std::invalid_argument("Grid1D: bad cell count");
  return Grid1D(-half_width, half_width, static_cast<std::size_t>(cells));
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> x(n_cells_);
  for (std::size_t i = 0; i < n_cells_; ++i) x[i] = center(i);
  return x;
}

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

Field indicator_average(const Grid1D& grid, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("indicator_average: need a < b");
  Field out(grid);
  const double dx = grid.dx();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lo = std::max(a, grid.face(i));
    const double hi = std::min(b, grid.face(i + 1));
    if (hi <= lo) continue;
    // Full cells get exactly 1 so the average carries no rounding.
    out[i] = (lo == grid.face(i) && hi == grid.face(i + 1)) ? 1.0 : (hi - lo) / dx;
  }
  return out;
}

}  // namespace bhs

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bhs {

/// Uniform cell-centered mesh on [x_min, x_max].
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, std::size_t n_cells);

  /// Symmetric domain [-half_width, half_width] with n_cells = round(2L/dx).
  static Grid1D symmetric(double half_width, double dx);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_cells_; }
  double dx() const { return dx_; }
  double length() const { return x_max_ - x_min_; }

  double center(std::size_t i) const {
    return x_min_ + (static_cast<double>(i) + 0.5) * dx_;
  }
  /// Position of face i (i = 0 is x_min, i = size() is x_max).
  double face(std::size_t i) const { return x_min_ + static_cast<double>(i) * dx_; }

  std::vector<double> centers() const;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_cells_;
  double dx_;
};

/// Cell averages of one scalar quantity on a grid.
struct Field {
  std::vector<double> values;

  Field() = default;
  explicit Field(const Grid1D& grid, double fill = 0.0) : values(grid.size(), fill) {}
  explicit Field(std::vector<double> v) : values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  std::span<double> span() { return values; }
  std::span<const double> span() const { return values; }

  bool all_finite() const;
};

/// Exact cell averages of the indicator of [a, b].
Field indicator_average(const Grid1D& grid, double a, double b);

}  // namespace bhs

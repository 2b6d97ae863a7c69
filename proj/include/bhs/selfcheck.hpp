#pragma once

#include <string>
#include <vector>

namespace bhs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant battery behind `bhs check` (well under a second).
std::vector<CheckResult> run_self_checks();

/// L-infinity convergence order of the potential solver on the manufactured
/// solution W = cos(x), p = (1 + nu) cos(x) over [-pi, pi] with exact
/// Dirichlet data, between n_cells and 2 n_cells.
double manufactured_order(double nu, std::size_t n_cells);

}  // namespace bhs

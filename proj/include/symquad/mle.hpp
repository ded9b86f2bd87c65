#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace symquad {

struct MleResult {
  double length_scale = 0.0;
  double scale = 0.0;  // profiled amplitude at the selected length scale
  std::vector<std::string> warnings;
};

/// Selects the grid candidate maximizing the Gaussian-process log marginal
/// likelihood of the values at the points, with the kernel amplitude
/// profiled out analytically (quadrature weights do not depend on it). The
/// full kernel matrix gets jitter on the diagonal; candidates whose matrix
/// fails to factor are skipped with a warning. Exhaustive over the grid,
/// ties resolved to the smallest candidate.
/// Throws ValidationError "too-many-nodes" above max_nodes and
/// NumericalError "mle-failure" when every candidate fails. Constant data
/// yields a "degenerate-data" warning with the smallest candidate.
MleResult mle_lengthscale(std::span<const double> points, int dim,
                          std::span<const double> values,
                          std::span<const double> grid, double jitter = 1e-10,
                          std::int64_t max_nodes = 3000);

}  // namespace symquad

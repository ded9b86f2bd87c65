#include "symquad/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symquad/errors.hpp"
#include "symquad/linalg.hpp"

namespace symquad {

MleResult mle_lengthscale(std::span<const double> points, int dim,
                          std::span<const double> values,
                          std::span<const double> grid, double jitter,
                          std::int64_t max_nodes) {
  if (dim < 1) throw ValidationError("invalid-dimension", "dimension must be positive");
  if (points.size() % dim != 0)
    throw ValidationError("dimension-mismatch",
                          "flat point list length is not a multiple of dim");
  const std::int64_t n = static_cast<std::int64_t>(points.size()) / dim;
  if (n < 1) throw ValidationError("empty-node-set", "no points given");
  if (n > max_nodes)
    throw ValidationError("too-many-nodes",
                          std::to_string(n) + " points exceed the MLE cap of " +
                              std::to_string(max_nodes));
  if (static_cast<std::int64_t>(values.size()) != n)
    throw ValidationError("dimension-mismatch", "values length does not match point count");
  if (grid.empty()) throw ValidationError("invalid-config", "empty length-scale grid");

  std::vector<double> cand(grid.begin(), grid.end());
  std::sort(cand.begin(), cand.end());
  for (double l : cand)
    if (!(l > 0.0))
      throw ValidationError("invalid-config", "length-scale candidates must be positive");

  MleResult out;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (*mn == *mx) {
    out.warnings.push_back(
        "degenerate-data: constant values carry no length-scale information; "
        "returning the smallest candidate");
    out.length_scale = cand.front();
    out.scale = 0.0;
    return out;
  }

  // Pairwise squared distances once; each candidate only re-exponentiates.
  std::vector<double> dist2(static_cast<std::size_t>(n) * n);
  for (std::int64_t i = 0; i < n; ++i) {
    const double* pi = points.data() + i * dim;
    for (std::int64_t j = 0; j <= i; ++j) {
      const double* pj = points.data() + j * dim;
      double d2 = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double diff = pi[c] - pj[c];
        d2 += diff * diff;
      }
      dist2[static_cast<std::size_t>(i) * n + j] = d2;
      dist2[static_cast<std::size_t>(j) * n + i] = d2;
    }
  }

  double best_ll = -std::numeric_limits<double>::infinity();
  bool any = false;
  std::vector<double> kmat(dist2.size());
  for (double l : cand) {
    const double inv = -0.5 / (l * l);
    for (std::size_t i = 0; i < kmat.size(); ++i) kmat[i] = std::exp(dist2[i] * inv);
    for (std::int64_t i = 0; i < n; ++i)
      kmat[static_cast<std::size_t>(i) * n + i] += jitter;
    std::vector<double> chol;
    try {
      chol = linalg::cholesky_factor(kmat, static_cast<int>(n));
    } catch (const NumericalError&) {
      out.warnings.push_back("skipped length scale " + std::to_string(l) +
                             ": kernel matrix not positive definite");
      continue;
    }
    std::vector<double> alpha(values.begin(), values.end());
    linalg::cholesky_solve(chol, static_cast<int>(n), alpha);
    double quad = 0.0;
    for (std::int64_t i = 0; i < n; ++i) quad += values[i] * alpha[i];
    // Profile likelihood: with amplitude s profiled to quad / n, maximizing
    // the marginal likelihood reduces to minimizing
    // n log(quad) + log det K. Guard quad for degenerate data.
    const double ll = -0.5 * n * std::log(std::max(quad, 1e-300)) -
                      0.5 * linalg::cholesky_log_det(chol, static_cast<int>(n));
    if (ll > best_ll) {
      best_ll = ll;
      out.length_scale = l;
      out.scale = std::max(quad, 0.0) / static_cast<double>(n);
      any = true;
    }
  }
  if (!any)
    throw NumericalError("mle-failure",
                         "no length-scale candidate produced a positive "
                         "definite kernel matrix");
  return out;
}

}  // namespace symquad

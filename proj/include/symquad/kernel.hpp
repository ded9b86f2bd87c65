#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/rng.hpp"

namespace symquad {

/// Isotropic Gaussian kernel scale * exp(-|x - x'|^2 / (2 l^2)).
struct GaussianKernel {
  double length_scale = 1.0;
  double scale = 1.0;

  GaussianKernel() = default;
  GaussianKernel(double length_scale_, double scale_ = 1.0)
      : length_scale(length_scale_), scale(scale_) {
    if (!(length_scale > 0.0) || !std::isfinite(length_scale))
      throw ValidationError("invalid-kernel", "length scale must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw ValidationError("invalid-kernel", "scale must be positive");
  }

  double operator()(std::span<const double> x, std::span<const double> y) const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = x[i] - y[i];
      d2 += diff * diff;
    }
    return scale * std::exp(-d2 / (2.0 * length_scale * length_scale));
  }
};

/// Kernel evaluation with an explicit dimension check.
inline double kernel_eval(const GaussianKernel& k, std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size())
    throw ValidationError("dimension-mismatch",
                          "kernel arguments have dimensions " +
                              std::to_string(x.size()) + " and " +
                              std::to_string(y.size()));
  return k(x, y);
}

/// Randomized check that k(Px, Px') = k(x, x') for signed-permutation
/// matrices P. Full symmetry of the kernel is what makes the row-sum
/// weight system valid, so callers use this as a guard for custom kernels.
template <typename K>
bool is_fully_symmetric_kernel(const K& k, int dim, int samples,
                               std::uint64_t seed, double tol = 1e-12) {
  Rng rng(seed);
  std::vector<double> x(dim), y(dim), px(dim), py(dim);
  std::vector<int> perm(dim);
  for (int s = 0; s < samples; ++s) {
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = dim - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<int>(rng.next_u64() % (i + 1))]);
    for (int i = 0; i < dim; ++i) {
      const double sign = (rng.next_u64() & 1) ? -1.0 : 1.0;
      px[i] = sign * x[perm[i]];
      py[i] = sign * y[perm[i]];
    }
    if (std::fabs(k(px, py) - k(x, y)) > tol) return false;
  }
  return true;
}

}  // namespace symquad

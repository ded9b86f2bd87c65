#include "symquad/measure.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "symquad/errors.hpp"

namespace symquad {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

// The mean depends only on the multiset of coordinate magnitudes. Reducing
// to sorted magnitudes first makes the result bit-identical across a fully
// symmetric orbit, which the weight solve relies on: an ill-conditioned
// system amplifies even ulp-level asymmetry of the right-hand side.
std::vector<double> sorted_magnitudes(std::span<const double> x) {
  std::vector<double> m(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) m[i] = std::fabs(x[i]);
  std::sort(m.begin(), m.end());
  return m;
}
}  // namespace

SymmetricMeasure::SymmetricMeasure(MeasureKind kind_, int dim_)
    : kind(kind_), dim(dim_) {
  if (dim < 1)
    throw ValidationError("invalid-dimension",
                          "measure dimension must be positive, got " +
                              std::to_string(dim));
}

const char* measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kStdGaussian: return "std_gaussian";
    case MeasureKind::kUniformCube: return "uniform_cube";
  }
  return "unknown";
}

double kernel_mean(const GaussianKernel& k, const SymmetricMeasure& mu,
                   std::span<const double> x) {
  if (static_cast<int>(x.size()) != mu.dim)
    throw ValidationError("dimension-mismatch",
                          "point has dimension " + std::to_string(x.size()) +
                              ", measure has " + std::to_string(mu.dim));
  const double l2 = k.length_scale * k.length_scale;
  const auto mags = sorted_magnitudes(x);
  switch (mu.kind) {
    case MeasureKind::kStdGaussian: {
      double norm2 = 0.0;
      for (double v : mags) norm2 += v * v;
      return k.scale * std::pow(l2 / (1.0 + l2), 0.5 * mu.dim) *
             std::exp(-norm2 / (2.0 * (1.0 + l2)));
    }
    case MeasureKind::kUniformCube: {
      double prod = std::pow(kPi * l2 / 8.0, 0.5 * mu.dim);
      const double a = kSqrt2 * k.length_scale;
      for (double v : mags)
        prod *= std::erf((v + 1.0) / a) - std::erf((v - 1.0) / a);
      return k.scale * prod;
    }
  }
  throw Error("no-closed-form", "unsupported kernel/measure pair");
}

double initial_error_sq(const GaussianKernel& k, const SymmetricMeasure& mu) {
  const double l2 = k.length_scale * k.length_scale;
  switch (mu.kind) {
    case MeasureKind::kStdGaussian:
      return k.scale * std::pow(l2 / (2.0 + l2), 0.5 * mu.dim);
    case MeasureKind::kUniformCube: {
      // expm1 keeps the difference accurate for large length scales, where
      // e^{-2/l^2} - 1 suffers cancellation.
      const double base = std::sqrt(2.0 * l2 / kPi) * std::expm1(-2.0 / l2) +
                          2.0 * std::erf(kSqrt2 / k.length_scale);
      return k.scale * std::pow(kPi * l2 / 8.0, 0.5 * mu.dim) *
             std::pow(base, mu.dim);
    }
  }
  throw Error("no-closed-form", "unsupported kernel/measure pair");
}

}  // namespace symquad

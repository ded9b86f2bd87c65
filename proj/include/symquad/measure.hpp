#pragma once

#include <span>
#include <string>

#include "symquad/kernel.hpp"

namespace symquad {

enum class MeasureKind {
  kStdGaussian,  // N(0, I) on R^d
  kUniformCube,  // normalized uniform on [-1, 1]^d
};

/// One of the two supported fully symmetric measures. The set is a closed
/// enumeration: the row-sum weight identity needs a fully symmetric measure
/// with a closed-form kernel mean, which holds for exactly these pairs.
struct SymmetricMeasure {
  MeasureKind kind = MeasureKind::kStdGaussian;
  int dim = 0;

  SymmetricMeasure() = default;
  SymmetricMeasure(MeasureKind kind_, int dim_);
};

const char* measure_kind_name(MeasureKind kind);

/// Kernel mean k_mu(x) = integral of k(x, .) against the measure, in closed
/// form. Throws ValidationError "dimension-mismatch" when x has the wrong
/// dimension and Error "no-closed-form" for an unsupported pair.
double kernel_mean(const GaussianKernel& k, const SymmetricMeasure& mu,
                   std::span<const double> x);

/// Double integral of the kernel against the measure, mu(k_mu). This is the
/// squared worst-case error of the empty rule; strictly positive.
double initial_error_sq(const GaussianKernel& k, const SymmetricMeasure& mu);

}  // namespace symquad

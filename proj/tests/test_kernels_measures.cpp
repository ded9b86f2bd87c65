#include <cmath>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "symquad/errors.hpp"
#include "symquad/kernel.hpp"
#include "symquad/measure.hpp"
#include "symquad/rng.hpp"

namespace {

using namespace symquad;
using testsupport::adaptive_simpson;

// 1-D kernel mean against the measure, by quadrature. Both measures are
// products of 1-D factors and the kernel factorizes over coordinates, so
// multi-dimensional means are products of these.
double numeric_mean_1d(const GaussianKernel& k, MeasureKind kind, double x,
                       double tol = 1e-13) {
  if (kind == MeasureKind::kStdGaussian) {
    const auto f = [&](double y) {
      return k(std::span<const double>(&x, 1), std::span<const double>(&y, 1)) *
             std::exp(-0.5 * y * y) / std::sqrt(2.0 * M_PI);
    };
    return adaptive_simpson(f, -12.0, 12.0, tol);
  }
  const auto f = [&](double y) {
    return 0.5 * k(std::span<const double>(&x, 1), std::span<const double>(&y, 1));
  };
  return adaptive_simpson(f, -1.0, 1.0, tol);
}

// The nested integral needs a much tighter inner tolerance: inner noise
// feeds the outer Richardson estimate.
double numeric_initial_1d(const GaussianKernel& k, MeasureKind kind) {
  if (kind == MeasureKind::kStdGaussian) {
    const auto f = [&](double x) {
      return numeric_mean_1d(k, kind, x, 1e-15) * std::exp(-0.5 * x * x) /
             std::sqrt(2.0 * M_PI);
    };
    return adaptive_simpson(f, -12.0, 12.0, 1e-12);
  }
  const auto f = [&](double x) { return 0.5 * numeric_mean_1d(k, kind, x, 1e-15); };
  return adaptive_simpson(f, -1.0, 1.0, 1e-12);
}

}  // namespace

TEST_SUITE("kernels_measures") {

TEST_CASE("gaussian kernel basics") {
  const GaussianKernel k(0.8, 2.5);
  const std::vector<double> x = {0.3, -1.2};
  const std::vector<double> y = {1.0, 0.4};
  CHECK(k(x, x) == doctest::Approx(2.5));
  CHECK(k(x, y) == doctest::Approx(k(y, x)));
  double d2 = 0.0;
  for (int i = 0; i < 2; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  CHECK(k(x, y) == doctest::Approx(2.5 * std::exp(-d2 / (2.0 * 0.64))));
}

TEST_CASE("kernel construction validates parameters") {
  CHECK_THROWS_WITH_AS(GaussianKernel(0.0), doctest::Contains("length"),
                       ValidationError);
  CHECK_THROWS_AS(GaussianKernel(-1.0), ValidationError);
  CHECK_THROWS_AS(GaussianKernel(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(GaussianKernel(std::nan("")), ValidationError);
}

TEST_CASE("kernel_eval rejects mismatched dimensions") {
  const GaussianKernel k(1.0);
  const std::vector<double> x = {1.0, 2.0};
  const std::vector<double> y = {1.0};
  CHECK_THROWS_WITH_AS(kernel_eval(k, x, y), doctest::Contains("dimension"),
                       ValidationError);
}

TEST_CASE("full symmetry check accepts the gaussian and rejects a shifted one") {
  const GaussianKernel k(1.3);
  CHECK(is_fully_symmetric_kernel(k, 4, 200, 17));
  const auto skew = [](std::span<const double> x, std::span<const double> y) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return std::exp(-0.5 * d2) + 0.05 * x[0];
  };
  CHECK_FALSE(is_fully_symmetric_kernel(skew, 3, 200, 17));
}

TEST_CASE("measure construction validates dimension") {
  CHECK_THROWS_AS(SymmetricMeasure(MeasureKind::kStdGaussian, 0),
                  ValidationError);
  CHECK(measure_kind_name(MeasureKind::kStdGaussian) ==
        std::string("std_gaussian"));
  CHECK(measure_kind_name(MeasureKind::kUniformCube) ==
        std::string("uniform_cube"));
}

TEST_CASE("kernel mean matches 1-D quadrature") {
  Rng rng(5);
  for (const double l : {0.5, 1.0, 2.0}) {
    const GaussianKernel k(l);
    for (const auto kind :
         {MeasureKind::kStdGaussian, MeasureKind::kUniformCube}) {
      const SymmetricMeasure mu(kind, 1);
      for (int trial = 0; trial < 20; ++trial) {
        const double x =
            kind == MeasureKind::kStdGaussian ? rng.normal() : rng.uniform(-1, 1);
        const double got = kernel_mean(k, mu, std::span<const double>(&x, 1));
        const double want = numeric_mean_1d(k, kind, x);
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("kernel mean factorizes over coordinates") {
  Rng rng(6);
  for (const double l : {0.5, 1.0, 2.0}) {
    const GaussianKernel k(l);
    for (const auto kind :
         {MeasureKind::kStdGaussian, MeasureKind::kUniformCube}) {
      for (const int d : {2, 3}) {
        const SymmetricMeasure mu(kind, d);
        for (int trial = 0; trial < 10; ++trial) {
          std::vector<double> x(d);
          for (double& v : x)
            v = kind == MeasureKind::kStdGaussian ? rng.normal()
                                                  : rng.uniform(-1, 1);
          double want = 1.0;
          for (double v : x) want *= numeric_mean_1d(k, kind, v);
          CHECK(kernel_mean(k, mu, x) == doctest::Approx(want).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("kernel mean is fully symmetric in its argument") {
  Rng rng(7);
  const GaussianKernel k(0.9);
  for (const auto kind : {MeasureKind::kStdGaussian, MeasureKind::kUniformCube}) {
    const SymmetricMeasure mu(kind, 4);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<double> x(4);
      for (double& v : x) v = rng.uniform(-1, 1);
      const double base = kernel_mean(k, mu, x);
      std::vector<double> y(x);
      for (int i = 3; i > 0; --i)
        std::swap(y[i], y[rng.next_u64() % (i + 1)]);
      for (double& v : y)
        if (rng.next_u64() & 1) v = -v;
      CHECK(kernel_mean(k, mu, y) == doctest::Approx(base).epsilon(1e-12));
    }
  }
}

TEST_CASE("initial error matches quadrature and takes the product form") {
  for (const double l : {0.5, 1.0, 2.0}) {
    const GaussianKernel k(l);
    for (const auto kind :
         {MeasureKind::kStdGaussian, MeasureKind::kUniformCube}) {
      const double one_d = numeric_initial_1d(k, kind);
      for (const int d : {1, 2, 3}) {
        const SymmetricMeasure mu(kind, d);
        CHECK(initial_error_sq(k, mu) ==
              doctest::Approx(std::pow(one_d, d)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("initial error closed form, unit length scale") {
  // (l^2 / (2 + l^2))^(d/2) at l = 1, d = 1.
  const GaussianKernel k(1.0);
  const SymmetricMeasure mu(MeasureKind::kStdGaussian, 1);
  CHECK(initial_error_sq(k, mu) == doctest::Approx(std::sqrt(1.0 / 3.0)));
}

TEST_CASE("kernel scale multiplies the mean and the initial error") {
  const GaussianKernel unit(0.7, 1.0);
  const GaussianKernel scaled(0.7, 3.5);
  const SymmetricMeasure mu(MeasureKind::kStdGaussian, 2);
  const std::vector<double> x = {0.4, -0.9};
  CHECK(kernel_mean(scaled, mu, x) ==
        doctest::Approx(3.5 * kernel_mean(unit, mu, x)));
  CHECK(initial_error_sq(scaled, mu) ==
        doctest::Approx(3.5 * initial_error_sq(unit, mu)));
}

}  // TEST_SUITE

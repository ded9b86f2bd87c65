#include "symquad/integrands.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/kernel.hpp"
#include "symquad/measure.hpp"

namespace symquad {

namespace {

void check_dim(std::span<const double> x, int want, const char* what) {
  if (static_cast<int>(x.size()) != want)
    throw ValidationError("dimension-mismatch",
                          std::string(what) + " expects dimension " +
                              std::to_string(want) + ", got " +
                              std::to_string(x.size()));
}

std::vector<double> ex2_center() {
  std::vector<double> c(11);
  for (int i = 0; i < 11; ++i) c[i] = 0.2 + 0.03 * i;
  return c;
}

constexpr double kEx2LengthScale = 0.8;

void check_vasicek(const VasicekParams& p) {
  const double kdt = p.kappa * p.dt();
  if (!(p.steps >= 2) || !(p.dt() > 0.0) || !(kdt > 0.0) || !(kdt < 1.0))
    throw ValidationError("invalid-config",
                          "need steps >= 2 and 0 < kappa * dt < 1");
}

}  // namespace

double integrand_ex1(std::span<const double> x) {
  check_dim(x, 3, "integrand_ex1");
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double s = std::sin(5.0 * r);
  const double x3sq = x[2] * x[2];
  return std::exp(s * s - (x[0] * x[0] + 0.5 * x[1] * x[1] + 2.0 * x3sq * x3sq));
}

double integrand_ex2(std::span<const double> x) {
  check_dim(x, 11, "integrand_ex2");
  static const std::vector<double> c = ex2_center();
  double d2 = 0.0;
  for (int i = 0; i < 11; ++i) {
    const double diff = x[i] - c[i];
    d2 += diff * diff;
  }
  return std::exp(-d2 / (2.0 * kEx2LengthScale * kEx2LengthScale));
}

double true_integral_ex2() {
  // The integrand is the Gaussian kernel with length scale 0.8 held at the
  // bump center, so the closed-form kernel mean gives the exact value.
  static const std::vector<double> c = ex2_center();
  return kernel_mean(GaussianKernel(kEx2LengthScale),
                     SymmetricMeasure(MeasureKind::kUniformCube, 11), c);
}

double bond_integrand(const VasicekParams& p, std::span<const double> x) {
  check_vasicek(p);
  check_dim(x, p.steps - 1, "bond_integrand");
  const double dt = p.dt();
  const double sdt = p.sigma * std::sqrt(dt);
  double r = p.r0;
  double sum = r;
  for (int k = 0; k < p.steps - 1; ++k) {
    r += p.kappa * (p.theta - r) * dt + sdt * x[k];
    sum += r;
  }
  return std::exp(-dt * sum);
}

double bond_closed_form(const VasicekParams& p) {
  check_vasicek(p);
  const double dt = p.dt();
  const double a = 1.0 - p.kappa * dt;
  // beta_k = sum_{j=1..k} (1 - kappa dt)^{j-1}; gamma accumulates over
  // k = 1..steps-1 while beta continues one step further to beta_d.
  double beta = 0.0, pow_a = 1.0, gamma = 0.0;
  for (int k = 1; k <= p.steps; ++k) {
    beta += pow_a;
    pow_a *= a;
    if (k <= p.steps - 1)
      gamma += beta * p.kappa * p.theta * dt -
               0.5 * (beta * p.sigma * dt) * (beta * p.sigma * dt);
  }
  return std::exp(-dt * (gamma + beta * p.r0));
}

}  // namespace symquad

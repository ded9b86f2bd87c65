#pragma once

#include <span>

namespace symquad {

/// exp(sin(5|x|)^2 - (x1^2 + 0.5 x2^2 + 2 x3^4)) on R^3; deliberately
/// non-radial, integrated against the standard normal.
double integrand_ex1(std::span<const double> x);

/// Gaussian bump exp(-|x - c|^2 / (2 * 0.8^2)) on R^11, where c has 11
/// evenly spaced coordinates on [0.2, 0.5]. Its uniform-cube integral has a
/// closed form.
double integrand_ex2(std::span<const double> x);

/// The exact normalized integral of integrand_ex2 over [-1,1]^11.
double true_integral_ex2();

/// Vasicek short-rate model parameters and Euler discretization. The bond
/// price integral over the discretized paths has dimension steps - 1.
struct VasicekParams {
  double kappa = 0.1817303;
  double theta = 0.0825398957;
  double sigma = 0.0125901;
  double r0 = 0.021673;
  double horizon = 5.0;  // years
  int steps = 10;

  double dt() const { return horizon / steps; }
};

/// Discounted-path integrand: runs the Euler recursion
/// r_k = r_{k-1} + kappa (theta - r_{k-1}) dt + sigma sqrt(dt) x_k
/// and returns exp(-dt * (r_0 + ... + r_{steps-1})). x has dimension
/// steps - 1 and is standard normal under the integration measure.
/// Throws ValidationError "invalid-config" unless 0 < kappa dt < 1.
double bond_integrand(const VasicekParams& p, std::span<const double> x);

/// Closed-form zero-coupon bond price of the discretized model.
double bond_closed_form(const VasicekParams& p);

}  // namespace symquad

#include "symquad/nested_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symquad/errors.hpp"

namespace symquad {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> clenshaw_curtis_level(int i) {
  if (i < 1) throw ValidationError("invalid-level", "level must be >= 1");
  if (i > 26)
    throw ValidationError("set-too-large",
                          "Clenshaw-Curtis level " + std::to_string(i) +
                              " has more than 2^25 points");
  if (i == 1) return {0.0};
  const int m = (1 << (i - 1)) + 1;
  const int half = (m - 1) / 2;
  std::vector<double> pts(m);
  pts[half] = 0.0;
  for (int t = 0; t < half; ++t) {
    const double v = std::cos(kPi * t / (m - 1));  // descending from 1
    pts[m - 1 - t] = v;
    pts[t] = -v;
  }
  // Replace any point within 1e-14 of a previous-level point by that point,
  // making nesting exact by construction rather than by accident.
  if (i > 1) {
    const auto prev = clenshaw_curtis_level(i - 1);
    for (auto& p : pts) {
      auto it = std::lower_bound(prev.begin(), prev.end(), p - 1e-14);
      if (it != prev.end() && std::fabs(*it - p) <= 1e-14) p = *it;
    }
  }
  return pts;
}

std::vector<double> hermite_roots(int degree) {
  if (degree < 1) throw ValidationError("invalid-level", "degree must be >= 1");
  // Newton on the orthonormal probabilists' recurrence
  //   phi_{n+1}(x) = (x phi_n(x) - sqrt(n) phi_{n-1}(x)) / sqrt(n+1),
  // with phi_n'(x) = sqrt(n) phi_{n-1}(x). Orthonormal values stay O(1), so
  // no rescaling is needed even at degree ~200.
  const int n = degree;
  const auto eval = [n](double x, double& dp) {
    double pm1 = 0.0, p = 1.0;  // common normalizing constant cancels in p/dp
    for (int k = 0; k < n; ++k) {
      const double next = (x * p - std::sqrt(static_cast<double>(k)) * pm1) /
                          std::sqrt(static_cast<double>(k + 1));
      pm1 = p;
      p = next;
    }
    dp = std::sqrt(static_cast<double>(n)) * pm1;
    return p;
  };

  // Asymptotic initial guesses for the descending positive roots, formed in
  // the physicists' scale and converted by sqrt(2).
  const double kScale = std::sqrt(2.0);
  const int half = (n + 1) / 2;
  std::vector<double> pos(half);
  // g is the previous converged root and g2 the one before it, both in the
  // physicists' scale the guess formulas are calibrated for.
  double g = 0.0, g2 = 0.0;
  for (int i = 0; i < half; ++i) {
    double guess;
    if (i == 0) {
      guess = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      guess = g - 1.14 * std::pow(static_cast<double>(n), 0.426) / g;
    } else if (i == 2) {
      guess = 1.86 * g - 0.86 * g2;
    } else if (i == 3) {
      guess = 1.91 * g - 0.91 * g2;
    } else {
      guess = 2.0 * g - g2;
    }
    double z = kScale * guess;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double dp;
      const double p = eval(z, dp);
      const double step = p / dp;
      z -= step;
      if (std::fabs(step) <= 1e-14 * std::max(1.0, std::fabs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("no-convergence",
                           "Hermite root iteration stalled at degree " +
                               std::to_string(degree));
    g2 = g;
    g = z / kScale;
    pos[i] = z;
  }
  if (n % 2 == 1) pos[half - 1] = 0.0;

  std::vector<double> roots;
  roots.reserve(n);
  for (int i = 0; i < half; ++i)
    if (pos[i] > 0.0) roots.push_back(-pos[i]);
  if (n % 2 == 1) roots.push_back(0.0);
  for (int i = half - 1; i >= 0; --i)
    if (pos[i] > 0.0) roots.push_back(pos[i]);
  return roots;
}

NestedBasis NestedBasis::clenshaw_curtis(int max_level) {
  if (max_level < 1) throw ValidationError("invalid-level", "need at least one level");
  NestedBasis b;
  b.kind = Kind::kClenshawCurtis;
  for (int i = 1; i <= max_level; ++i) b.levels.push_back(clenshaw_curtis_level(i));
  return b;
}

NestedBasis NestedBasis::gauss_hermite(int q) {
  if (q < 1) throw ValidationError("invalid-level", "need q >= 1");
  const auto roots = hermite_roots(2 * q + 1);
  NestedBasis b;
  b.kind = Kind::kGaussHermite;
  for (int i = 1; i <= q + 1; ++i) {
    // 2i - 1 smallest-magnitude roots; roots are symmetric and ascending,
    // so these are the middle 2i - 1 entries.
    const int lo = q + 1 - i;
    b.levels.emplace_back(roots.begin() + lo, roots.end() - lo);
  }
  return b;
}

std::vector<double> NestedBasis::nonnegative_part(int i) const {
  const auto& lv = levels[i - 1];
  std::vector<double> out;
  for (double v : lv)
    if (v >= 0.0) out.push_back(v);
  return out;
}

}  // namespace symquad

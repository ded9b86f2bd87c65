#include "symquad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "symquad/errors.hpp"

namespace symquad::linalg {

namespace {

constexpr int kBlock = 64;

// c[0..m)x[0..p) -= a[0..m)x[0..k) * b[0..k)x[0..p), row-major with leading
// dimension ld throughout. Plain ikj loops; the unit-stride inner loop
// vectorizes well enough for the desk-scale sizes used here.
void gemm_sub(double* __restrict__ c, const double* __restrict__ a,
              const double* __restrict__ b, int m, int k, int p, int ld) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * ld;
    const double* ai = a + static_cast<std::size_t>(i) * ld;
    for (int l = 0; l < k; ++l) {
      const double ail = ai[l];
      if (ail == 0.0) continue;
      const double* bl = b + static_cast<std::size_t>(l) * ld;
      for (int j = 0; j < p; ++j) ci[j] -= ail * bl[j];
    }
  }
}

}  // namespace

LuFactors lu_factor(std::vector<double> a, int n, double pivot_rel_tol) {
  LuFactors f;
  f.n = n;
  f.lu = std::move(a);
  f.perm.resize(n);
  double* m = f.lu.data();
  const auto row = [&](int i) { return m + static_cast<std::size_t>(i) * n; };

  double max_abs = 0.0;
  for (const double v : f.lu) max_abs = std::max(max_abs, std::abs(v));
  const double pivot_floor = pivot_rel_tol > 0.0 ? pivot_rel_tol * max_abs : 0.0;

  for (int k0 = 0; k0 < n; k0 += kBlock) {
    const int kb = std::min(kBlock, n - k0);

    // Panel factorization with partial pivoting, full column height.
    for (int k = k0; k < k0 + kb; ++k) {
      int piv = k;
      double best = std::abs(row(k)[k]);
      for (int i = k + 1; i < n; ++i) {
        const double v = std::abs(row(i)[k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      f.perm[k] = piv;
      if (piv != k) std::swap_ranges(row(k), row(k) + n, row(piv));
      const double pivot = row(k)[k];
      if (best <= pivot_floor || pivot == 0.0) {
        throw NumericalError(
            "singular-system",
            "pivot " + std::to_string(k) + " magnitude " + std::to_string(best) +
                " below threshold; system is numerically singular");
      }
      const double inv = 1.0 / pivot;
      for (int i = k + 1; i < n; ++i) {
        row(i)[k] *= inv;
        const double lik = row(i)[k];
        for (int j = k + 1; j < k0 + kb; ++j) row(i)[j] -= lik * row(k)[j];
      }
    }

    if (k0 + kb >= n) break;

    // U block row: A12 <- L11^{-1} A12.
    for (int k = k0; k < k0 + kb; ++k) {
      for (int i = k + 1; i < k0 + kb; ++i) {
        const double lik = row(i)[k];
        if (lik == 0.0) continue;
        const double* rk = row(k);
        double* ri = row(i);
        for (int j = k0 + kb; j < n; ++j) ri[j] -= lik * rk[j];
      }
    }

    // Trailing update A22 -= A21 * A12.
    gemm_sub(row(k0 + kb) + (k0 + kb), row(k0 + kb) + k0, row(k0) + (k0 + kb),
             n - k0 - kb, kb, n - k0 - kb, n);
  }
  return f;
}

void lu_solve(const LuFactors& f, std::span<double> b) {
  const int n = f.n;
  const double* m = f.lu.data();
  const auto row = [&](int i) { return m + static_cast<std::size_t>(i) * n; };
  for (int k = 0; k < n; ++k)
    if (f.perm[k] != k) std::swap(b[k], b[f.perm[k]]);
  for (int i = 1; i < n; ++i) {
    double s = b[i];
    const double* ri = row(i);
    for (int j = 0; j < i; ++j) s -= ri[j] * b[j];
    b[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    const double* ri = row(i);
    for (int j = i + 1; j < n; ++j) s -= ri[j] * b[j];
    b[i] = s / ri[i];
  }
}

namespace {

// Residual b - A x with FMA two-products and compensated summation, so the
// refinement floor is set by conditioning alone and not by accumulation
// precision.
void compensated_residual(const std::vector<double>& a, int n,
                          std::span<const double> b, std::span<const double> x,
                          std::vector<double>& r) {
  for (int i = 0; i < n; ++i) {
    const double* ri = a.data() + static_cast<std::size_t>(i) * n;
    double s = b[i], c = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = -ri[j] * x[j];
      const double pe = std::fma(-ri[j], x[j], -p);
      const double t = s + p;
      c += (std::fabs(s) >= std::fabs(p) ? (s - t) + p : (p - t) + s) + pe;
      s = t;
    }
    r[i] = s + c;
  }
}

}  // namespace

void lu_refine(const LuFactors& f, const std::vector<double>& a,
               std::span<const double> b, std::span<double> x, int max_iter) {
  const int n = f.n;
  std::vector<double> r(n);
  double prev_dx = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    compensated_residual(a, n, b, x, r);
    lu_solve(f, r);
    double dx = 0.0, xn = 0.0;
    for (int i = 0; i < n; ++i) {
      dx = std::max(dx, std::fabs(r[i]));
      xn = std::max(xn, std::fabs(x[i]));
    }
    // Corrections contract while cond(A) eps < 1. A correction as large as
    // the iterate, or larger than its predecessor, signals divergence;
    // applying it would amplify the error.
    if (dx >= xn || dx >= prev_dx) break;
    for (int i = 0; i < n; ++i) x[i] += r[i];
    prev_dx = dx;
    if (dx <= 1e-15 * xn) break;
  }
}

void lu_solve_transposed(const LuFactors& f, std::span<double> b) {
  const int n = f.n;
  const double* m = f.lu.data();
  const auto row = [&](int i) { return m + static_cast<std::size_t>(i) * n; };
  // A^T = (P^T L U)^T = U^T L^T P, so solve U^T y = b, L^T z = y, x = P^T z.
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= row(j)[i] * b[j];
    b[i] = s / row(i)[i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= row(j)[i] * b[j];
    b[i] = s;
  }
  for (int k = n - 1; k >= 0; --k)
    if (f.perm[k] != k) std::swap(b[k], b[f.perm[k]]);
}

std::vector<double> cholesky_factor(std::vector<double> a, int n) {
  double* m = a.data();
  const auto row = [&](int i) { return m + static_cast<std::size_t>(i) * n; };

  for (int k0 = 0; k0 < n; k0 += kBlock) {
    const int kb = std::min(kBlock, n - k0);

    // Diagonal block, unblocked.
    for (int k = k0; k < k0 + kb; ++k) {
      double d = row(k)[k];
      for (int j = k0; j < k; ++j) d -= row(k)[j] * row(k)[j];
      if (!(d > 0.0)) {
        throw NumericalError("not-positive-definite",
                             "Cholesky pivot " + std::to_string(k) +
                                 " is not positive (" + std::to_string(d) + ")");
      }
      const double lkk = std::sqrt(d);
      row(k)[k] = lkk;
      const double inv = 1.0 / lkk;
      for (int i = k + 1; i < k0 + kb; ++i) {
        double s = row(i)[k];
        for (int j = k0; j < k; ++j) s -= row(i)[j] * row(k)[j];
        row(i)[k] = s * inv;
      }
    }

    if (k0 + kb >= n) break;

    // Panel below: A21 <- A21 L11^{-T}.
    for (int i = k0 + kb; i < n; ++i) {
      double* ri = row(i);
      for (int k = k0; k < k0 + kb; ++k) {
        double s = ri[k];
        const double* rk = row(k);
        for (int j = k0; j < k; ++j) s -= ri[j] * rk[j];
        ri[k] = s / rk[k];
      }
    }

    // Trailing update A22 -= A21 A21^T, lower triangle only. Each entry is
    // a dot product of two panel-row segments (both unit stride).
    for (int i = k0 + kb; i < n; ++i) {
      const double* ai = row(i) + k0;
      double* ci = row(i);
      for (int j = k0 + kb; j <= i; ++j) {
        const double* aj = row(j) + k0;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        int l = 0;
        for (; l + 4 <= kb; l += 4) {
          s0 += ai[l] * aj[l];
          s1 += ai[l + 1] * aj[l + 1];
          s2 += ai[l + 2] * aj[l + 2];
          s3 += ai[l + 3] * aj[l + 3];
        }
        for (; l < kb; ++l) s0 += ai[l] * aj[l];
        ci[j] -= (s0 + s1) + (s2 + s3);
      }
    }
  }

  // Zero the strictly upper part so the factor is unambiguous.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) row(i)[j] = 0.0;
  return a;
}

void cholesky_solve(const std::vector<double>& chol, int n, std::span<double> b) {
  const double* m = chol.data();
  const auto row = [&](int i) { return m + static_cast<std::size_t>(i) * n; };
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    const double* ri = row(i);
    for (int j = 0; j < i; ++j) s -= ri[j] * b[j];
    b[i] = s / ri[i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= row(j)[i] * b[j];
    b[i] = s / row(i)[i];
  }
}

double cholesky_log_det(const std::vector<double>& chol, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += std::log(chol[static_cast<std::size_t>(i) * n + i]);
  return 2.0 * s;
}

double norm1(const std::vector<double>& a, int n) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += std::abs(a[static_cast<std::size_t>(i) * n + j]);
    best = std::max(best, s);
  }
  return best;
}

double condition_estimate(const LuFactors& f, double a_norm1) {
  const int n = f.n;
  if (n == 0) return 0.0;
  if (n == 1) return 1.0;

  // Hager's estimator for ||A^{-1}||_1.
  std::vector<double> x(n, 1.0 / n);
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    std::vector<double> y = x;
    lu_solve(f, y);
    double y1 = 0.0;
    for (const double v : y) y1 += std::abs(v);
    est = std::max(est, y1);
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = (y[i] >= 0.0) ? 1.0 : -1.0;
    lu_solve_transposed(f, xi);
    int jmax = 0;
    double zmax = 0.0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(xi[i]) > zmax) {
        zmax = std::abs(xi[i]);
        jmax = i;
      }
    }
    double xz = 0.0;
    for (int i = 0; i < n; ++i) xz += xi[i] * x[i];
    if (zmax <= xz) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return est * a_norm1;
}

}  // namespace symquad::linalg

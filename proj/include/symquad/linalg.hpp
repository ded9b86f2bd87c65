#pragma once

#include <span>
#include <vector>

namespace symquad::linalg {

/// LU factorization with partial pivoting of a dense row-major matrix.
/// L is unit lower triangular, stored below the diagonal; U on and above.
struct LuFactors {
  int n = 0;
  std::vector<double> lu;   // n x n row-major
  std::vector<int> perm;    // perm[k] = row swapped into position k at step k
};

/// Factorizes a (row-major, n x n, consumed by value). If pivot_rel_tol > 0,
/// throws NumericalError with code "singular-system" when a pivot magnitude
/// drops below pivot_rel_tol * max|a|; the message names the pivot index.
LuFactors lu_factor(std::vector<double> a, int n, double pivot_rel_tol = 0.0);

/// Solves A x = b in place given the factorization.
void lu_solve(const LuFactors& f, std::span<double> b);

/// Iterative refinement of an LU solution with residuals accumulated in
/// extended precision. Reduces the forward error toward working precision
/// while cond(A) stays below roughly 1/eps; near that bound each step
/// contracts the error slowly, hence the generous iteration cap. Stops early
/// once the residual no longer decreases. a is the unfactored matrix.
void lu_refine(const LuFactors& f, const std::vector<double>& a,
               std::span<const double> b, std::span<double> x,
               int max_iter = 25);

/// Solves A^T x = b in place.
void lu_solve_transposed(const LuFactors& f, std::span<double> b);

/// Cholesky factorization A = L L^T of a symmetric positive definite
/// row-major matrix; returns the lower factor (upper part zeroed).
/// Throws NumericalError "not-positive-definite" if a diagonal pivot is
/// not strictly positive.
std::vector<double> cholesky_factor(std::vector<double> a, int n);

/// Solves L L^T x = b in place.
void cholesky_solve(const std::vector<double>& chol, int n, std::span<double> b);

/// 2 * sum(log diag(L)), i.e. log det of the factored matrix.
double cholesky_log_det(const std::vector<double>& chol, int n);

/// Maximum absolute column sum.
double norm1(const std::vector<double>& a, int n);

/// 1-norm condition number estimate from an LU factorization using Hager's
/// inverse-norm estimator (a handful of solves with A and A^T).
double condition_estimate(const LuFactors& f, double a_norm1);

}  // namespace symquad::linalg

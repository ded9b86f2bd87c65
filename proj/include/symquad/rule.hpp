#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symquad/kernel.hpp"
#include "symquad/measure.hpp"
#include "symquad/node_set.hpp"

namespace symquad {

/// Row-sum matrix of the weight system: S_ij is the sum of the kernel
/// between one representative of set i and every point of set j. The full
/// n x n kernel matrix never needs to be formed.
struct SMatrix {
  int j_count = 0;
  std::vector<double> s;  // J x J row-major
  std::vector<std::int64_t> set_sizes;
};

/// Builds S with the first point of each set as its representative, using
/// exactly J * total_nodes kernel evaluations. Each entry is summed
/// sequentially in point order, so results are bit-stable.
SMatrix build_s_matrix(const SymmetricNodeSet& ns, const GaussianKernel& k);

struct WeightSolution {
  std::vector<double> weights;      // one per set
  double residual_rel = 0.0;        // |S w - means|_inf / |means|_inf
  bool residual_warning = false;    // residual_rel > 1e-8
};

/// Solves S w = means by LU with partial pivoting. A pivot below
/// 1e-20 * max|S| throws NumericalError "singular-system" naming the pivot
/// index; this usually signals near-duplicate sets or a length scale far
/// too large for the node spacing. Merely ill-conditioned systems (deep
/// sparse grids reach condition numbers past 1e20) solve with a warning
/// through the condition estimate instead.
WeightSolution solve_weights(const SMatrix& s, std::span<const double> means);

struct NaiveWeights {
  std::vector<double> weights;  // one per node
  double cond_estimate = 0.0;
  bool cond_warning = false;    // cond_estimate > 1e14
  double t_kernel_s = 0.0;      // Gram matrix build
  double t_weights_s = 0.0;     // factorization and solve
};

/// Correctness oracle: solves the full n x n kernel system K w = k_mu(X).
/// O(n^3); refuses more than max_nodes points ("too-many-nodes").
NaiveWeights naive_weights(std::span<const double> points, int dim,
                           const GaussianKernel& k, const SymmetricMeasure& mu,
                           std::int64_t max_nodes = 10000);

/// Kernel quadrature rule on a union of fully symmetric sets: one weight
/// per set, worst-case error cached.
struct FsQuadratureRule {
  SymmetricNodeSet node_set;
  GaussianKernel kernel;
  SymmetricMeasure measure;
  std::vector<double> weights;    // per set
  std::vector<double> set_means;  // k_mu at each generator
  double wce = 0.0;
  double cond_estimate = 0.0;     // 1-norm condition estimate of S
  double residual_rel = 0.0;
  double t_kernel_s = 0.0;        // S-matrix build
  double t_weights_s = 0.0;       // factorization, solve, condition estimate
  std::vector<std::string> warnings;
};

/// Composes the row-sum matrix, per-set kernel means, and the weight solve;
/// caches the worst-case error and the condition estimate of S.
/// Throws ValidationError "empty-node-set" for a node set with no sets.
FsQuadratureRule make_rule(const SymmetricNodeSet& ns, const GaussianKernel& k,
                           const SymmetricMeasure& mu);

/// Squared worst-case error from the per-set parts:
/// initial_error_sq - sum_j w_j n_j k_mu(lambda^j). Handles the empty rule
/// (no sets). Round-off negatives in [-1e-10, 0) clamp to zero silently;
/// below that a warning is appended before clamping.
double worst_case_error_sq(double initial_sq, std::span<const double> weights,
                           std::span<const std::int64_t> sizes,
                           std::span<const double> means,
                           std::vector<std::string>* warnings = nullptr);

/// The rule's cached worst-case error.
double worst_case_error(const FsQuadratureRule& rule);

/// Per-node weights: every node of set j gets weights[j].
std::vector<double> expand_weights(const FsQuadratureRule& rule);

/// max_i |a_i - b_i| scaled by max_i |b_i|. The deviation measure of the
/// fast-versus-naive weight checks; scaling by the largest reference entry
/// keeps near-zero weights from inflating the ratio.
double max_relative_deviation(std::span<const double> a,
                              std::span<const double> b);

/// Applies the rule: sum_j w_j * (sum of f over set j), exactly total_nodes
/// evaluations of f in deterministic order.
template <typename F>
double integrate(const FsQuadratureRule& rule, F&& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.node_set.sets.size(); ++j)
    acc += rule.weights[j] * sum_over_set(rule.node_set.sets[j], f);
  return acc;
}

}  // namespace symquad

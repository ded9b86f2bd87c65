#include "symquad/rule.hpp"

#include <chrono>
#include <cmath>

#include "symquad/errors.hpp"
#include "symquad/linalg.hpp"

namespace symquad {

namespace {

double elapsed_s(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from)
      .count();
}

}  // namespace

SMatrix build_s_matrix(const SymmetricNodeSet& ns, const GaussianKernel& k) {
  if (ns.sets.empty())
    throw ValidationError("empty-node-set", "node set has no sets");
  const int j_count = static_cast<int>(ns.sets.size());
  SMatrix s;
  s.j_count = j_count;
  s.s.assign(static_cast<std::size_t>(j_count) * j_count, 0.0);
  s.set_sizes.reserve(j_count);
  for (const auto& set : ns.sets) s.set_sizes.push_back(set.size);

  for (int i = 0; i < j_count; ++i) {
    const auto rep = ns.sets[i].point(0);
    for (int j = 0; j < j_count; ++j) {
      const auto& set = ns.sets[j];
      double sum = 0.0;
      for (std::int64_t p = 0; p < set.size; ++p) sum += k(rep, set.point(p));
      if (!std::isfinite(sum))
        throw NumericalError("non-finite-evaluation",
                             "row sum (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ") is not finite");
      s.s[static_cast<std::size_t>(i) * j_count + j] = sum;
    }
  }
  return s;
}

WeightSolution solve_weights(const SMatrix& s, std::span<const double> means) {
  if (static_cast<int>(means.size()) != s.j_count)
    throw ValidationError("dimension-mismatch",
                          "means length " + std::to_string(means.size()) +
                              " does not match J = " + std::to_string(s.j_count));
  const int j_count = s.j_count;
  // Deep sparse grids are extremely ill-conditioned yet solvable: their
  // smallest pivots sit near 1e-17 * max|S| while numerically duplicate
  // sets collapse pivots below 1e-22 * max|S| (the kernel flattens small
  // coordinate offsets quadratically). The threshold separates the two.
  auto f = linalg::lu_factor(s.s, j_count, 1e-20);
  WeightSolution sol;
  sol.weights.assign(means.begin(), means.end());
  linalg::lu_solve(f, sol.weights);
  linalg::lu_refine(f, s.s, means, sol.weights);

  double r_inf = 0.0, m_inf = 0.0;
  for (int i = 0; i < j_count; ++i) {
    double r = -means[i];
    for (int j = 0; j < j_count; ++j)
      r += s.s[static_cast<std::size_t>(i) * j_count + j] * sol.weights[j];
    r_inf = std::max(r_inf, std::fabs(r));
    m_inf = std::max(m_inf, std::fabs(means[i]));
  }
  sol.residual_rel = (m_inf > 0.0) ? r_inf / m_inf : r_inf;
  sol.residual_warning = sol.residual_rel > 1e-8;
  return sol;
}

NaiveWeights naive_weights(std::span<const double> points, int dim,
                           const GaussianKernel& k, const SymmetricMeasure& mu,
                           std::int64_t max_nodes) {
  if (dim < 1) throw ValidationError("invalid-dimension", "dimension must be positive");
  if (points.size() % dim != 0)
    throw ValidationError("dimension-mismatch",
                          "flat point list length is not a multiple of dim");
  const std::int64_t n = static_cast<std::int64_t>(points.size()) / dim;
  if (n == 0) throw ValidationError("empty-node-set", "no nodes given");
  if (n > max_nodes)
    throw ValidationError("too-many-nodes",
                          std::to_string(n) + " nodes exceed the oracle cap of " +
                              std::to_string(max_nodes));

  auto point = [&](std::int64_t i) {
    return std::span<const double>(points.data() + i * dim,
                                   static_cast<std::size_t>(dim));
  };
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> kmat(static_cast<std::size_t>(n) * n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      kmat[static_cast<std::size_t>(i) * n + j] = k(point(i), point(j));
  NaiveWeights out;
  out.t_kernel_s = elapsed_s(t0);

  t0 = std::chrono::steady_clock::now();
  const double a_norm = linalg::norm1(kmat, static_cast<int>(n));
  auto f = linalg::lu_factor(kmat, static_cast<int>(n), 1e-300);
  std::vector<double> means(n);
  for (std::int64_t i = 0; i < n; ++i) means[i] = kernel_mean(k, mu, point(i));
  out.weights = means;
  linalg::lu_solve(f, out.weights);
  linalg::lu_refine(f, kmat, means, out.weights);
  out.cond_estimate = linalg::condition_estimate(f, a_norm);
  out.cond_warning = out.cond_estimate > 1e14;
  out.t_weights_s = elapsed_s(t0);
  return out;
}

FsQuadratureRule make_rule(const SymmetricNodeSet& ns, const GaussianKernel& k,
                           const SymmetricMeasure& mu) {
  if (ns.sets.empty())
    throw ValidationError("empty-node-set", "node set has no sets");
  if (ns.dim != mu.dim)
    throw ValidationError("dimension-mismatch",
                          "node set dimension " + std::to_string(ns.dim) +
                              " does not match measure dimension " +
                              std::to_string(mu.dim));
  FsQuadratureRule rule;
  rule.node_set = ns;
  rule.kernel = k;
  rule.measure = mu;

  auto t0 = std::chrono::steady_clock::now();
  auto s = build_s_matrix(ns, k);
  rule.t_kernel_s = elapsed_s(t0);
  rule.set_means.reserve(ns.sets.size());
  for (const auto& set : ns.sets)
    rule.set_means.push_back(kernel_mean(k, mu, set.generator.values));

  t0 = std::chrono::steady_clock::now();
  auto sol = solve_weights(s, rule.set_means);
  rule.weights = std::move(sol.weights);
  rule.residual_rel = sol.residual_rel;
  if (sol.residual_warning)
    rule.warnings.push_back("weight-residual: relative residual " +
                            std::to_string(sol.residual_rel) + " exceeds 1e-8");

  const double a_norm = linalg::norm1(s.s, s.j_count);
  auto f = linalg::lu_factor(s.s, s.j_count);
  rule.cond_estimate = linalg::condition_estimate(f, a_norm);
  rule.t_weights_s = elapsed_s(t0);

  const double e2 = worst_case_error_sq(initial_error_sq(k, mu), rule.weights,
                                        s.set_sizes, rule.set_means,
                                        &rule.warnings);
  rule.wce = std::sqrt(e2);
  return rule;
}

double worst_case_error_sq(double initial_sq, std::span<const double> weights,
                           std::span<const std::int64_t> sizes,
                           std::span<const double> means,
                           std::vector<std::string>* warnings) {
  double quad = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j)
    quad += weights[j] * static_cast<double>(sizes[j]) * means[j];
  double e2 = initial_sq - quad;
  if (e2 < 0.0) {
    if (e2 < -1e-10 && warnings)
      warnings->push_back("numerical-instability: squared worst-case error " +
                          std::to_string(e2) + " clamped to 0");
    e2 = 0.0;
  }
  return e2;
}

double worst_case_error(const FsQuadratureRule& rule) { return rule.wce; }

std::vector<double> expand_weights(const FsQuadratureRule& rule) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rule.node_set.total_nodes));
  for (std::size_t j = 0; j < rule.node_set.sets.size(); ++j)
    out.insert(out.end(), static_cast<std::size_t>(rule.node_set.sets[j].size),
               rule.weights[j]);
  return out;
}

double max_relative_deviation(std::span<const double> a,
                              std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("dimension-mismatch",
                          "deviation of vectors of different lengths");
  double dev = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max(dev, std::fabs(a[i] - b[i]));
    scale = std::max(scale, std::fabs(b[i]));
  }
  return dev / std::max(scale, 1e-300);
}

}  // namespace symquad

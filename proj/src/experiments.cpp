#include "symquad/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "symquad/errors.hpp"
#include "symquad/mle.hpp"
#include "symquad/nested_basis.hpp"
#include "symquad/node_selection.hpp"
#include "symquad/rng.hpp"
#include "symquad/rule.hpp"

namespace symquad {

namespace {

double now_elapsed(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - from)
      .count();
}

// splitmix64-style stream separation so every (seed, row, purpose) triple
// gets an independent deterministic substream.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1) +
                    0xbf58476d1ce4e5b9ull * (c + 1);
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

double rel_error(double estimate, double truth) {
  return std::fabs(estimate - truth) / std::fabs(truth);
}

void finish(ExperimentReport& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.n < b.n; });
}

}  // namespace

std::vector<double> default_lengthscale_grid() {
  // 16 log-spaced candidates on [0.1, 2].
  std::vector<double> grid(16);
  const double ratio = std::pow(20.0, 1.0 / 15.0);
  double l = 0.1;
  for (auto& g : grid) {
    g = l;
    l *= ratio;
  }
  return grid;
}

double mc_estimate_ex1(std::int64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  double acc = 0.0;
  double x[3];
  for (std::int64_t i = 0; i < samples; ++i) {
    x[0] = rng.normal();
    x[1] = rng.normal();
    x[2] = rng.normal();
    acc += integrand_ex1(std::span<const double>(x, 3));
  }
  return acc / static_cast<double>(samples);
}

ExperimentReport run_experiment_ex1(const Ex1Config& cfg) {
  for (int j : cfg.j_values)
    if (j < 1) throw ValidationError("invalid-config", "J values must be >= 1");
  if (cfg.seeds < 0) throw ValidationError("invalid-config", "seeds must be >= 0");
  const auto grid =
      cfg.lengthscale_grid.empty() ? default_lengthscale_grid() : cfg.lengthscale_grid;
  const SymmetricMeasure mu(MeasureKind::kStdGaussian, 3);

  ExperimentReport report{.id = "ex1", .rows = {}};
  if (cfg.j_values.empty() || cfg.seeds == 0) return report;

  const double truth = mc_estimate_ex1(cfg.mc_truth_samples, cfg.mc_truth_seed);

  for (int s = 0; s < cfg.seeds; ++s) {
    for (int j_count : cfg.j_values) {
      const std::int64_t n = 48 * static_cast<std::int64_t>(j_count);

      // Monte Carlo nodes of the naive rule; also the length-scale fit data.
      Rng node_rng(mix_seed(cfg.seed0, s, 2 * j_count));
      std::vector<double> nodes(static_cast<std::size_t>(n) * 3);
      for (auto& v : nodes) v = node_rng.normal();
      std::vector<double> fvals(n);
      for (std::int64_t i = 0; i < n; ++i)
        fvals[i] = integrand_ex1({nodes.data() + i * 3, 3});

      auto fss_t0 = std::chrono::steady_clock::now();
      const auto gens = random_generators(j_count, 3, MeasureKind::kStdGaussian,
                                          mix_seed(cfg.seed0, s, 2 * j_count + 1));
      const auto ns = make_node_set(3, gens);
      const double t_fss = now_elapsed(fss_t0);

      const std::int64_t n_fit = std::min<std::int64_t>(n, cfg.fit_subsample);
      MleResult fit;
      if (cfg.fit_on_fss) {
        const auto fss_nodes = all_nodes(ns);
        const std::int64_t nf = std::min<std::int64_t>(ns.total_nodes, cfg.fit_subsample);
        std::vector<double> fss_vals(nf);
        for (std::int64_t i = 0; i < nf; ++i)
          fss_vals[i] = integrand_ex1({fss_nodes.data() + i * 3, 3});
        fit = mle_lengthscale({fss_nodes.data(), static_cast<std::size_t>(nf) * 3}, 3,
                              fss_vals, grid);
      } else {
        fit = mle_lengthscale({nodes.data(), static_cast<std::size_t>(n_fit) * 3}, 3,
                              {fvals.data(), static_cast<std::size_t>(n_fit)}, grid);
      }
      const GaussianKernel kernel(fit.length_scale);

      if (cfg.include_kmc) {
        auto naive = naive_weights(nodes, 3, kernel, mu);
        double estimate = 0.0;
        for (std::int64_t i = 0; i < n; ++i) estimate += naive.weights[i] * fvals[i];
        double quad = 0.0;
        for (std::int64_t i = 0; i < n; ++i)
          quad += naive.weights[i] * kernel_mean(kernel, mu, {nodes.data() + i * 3, 3});
        double e2 = initial_error_sq(kernel, mu) - quad;
        ReportRow row{.method = "kmc",
                      .n = n,
                      .j = 0,
                      .estimate = estimate,
                      .truth = truth,
                      .rel_error = rel_error(estimate, truth),
                      .wce = std::sqrt(std::max(e2, 0.0)),
                      .t_kernel_s = naive.t_kernel_s,
                      .t_weights_s = naive.t_weights_s,
                      .t_fss_s = 0.0,
                      .seed = static_cast<std::uint64_t>(s),
                      .length_scale = fit.length_scale,
                      .warnings = fit.warnings};
        if (naive.cond_warning)
          row.warnings.push_back("ill-conditioned: kernel matrix condition estimate " +
                                 std::to_string(naive.cond_estimate));
        report.rows.push_back(std::move(row));
      }

      auto rule = make_rule(ns, kernel, mu);
      const double estimate = integrate(rule, integrand_ex1);
      ReportRow row{.method = "fskmc",
                    .n = ns.total_nodes,
                    .j = static_cast<std::int64_t>(j_count),
                    .estimate = estimate,
                    .truth = truth,
                    .rel_error = rel_error(estimate, truth),
                    .wce = rule.wce,
                    .t_kernel_s = rule.t_kernel_s,
                    .t_weights_s = rule.t_weights_s,
                    .t_fss_s = t_fss,
                    .seed = static_cast<std::uint64_t>(s),
                    .length_scale = fit.length_scale,
                    .warnings = fit.warnings};
      row.warnings.insert(row.warnings.end(), rule.warnings.begin(),
                          rule.warnings.end());
      report.rows.push_back(std::move(row));
    }
  }
  finish(report);
  return report;
}

ExperimentReport run_experiment_ex2(const Ex2Config& cfg) {
  if (cfg.q_max < 1) throw ValidationError("invalid-config", "q_max must be >= 1");
  if (cfg.q_max > 5 && !cfg.allow_large)
    throw ValidationError("invalid-config",
                          "q_max above 5 takes minutes to hours; pass the "
                          "allow-large flag to opt in");
  const SymmetricMeasure mu(MeasureKind::kUniformCube, 11);
  const GaussianKernel kernel(cfg.length_scale);
  const double truth = true_integral_ex2();

  ExperimentReport report{.id = "ex2", .rows = {}};
  for (int q = 1; q <= cfg.q_max; ++q) {
    auto t0 = std::chrono::steady_clock::now();
    const auto basis = NestedBasis::clenshaw_curtis(q + 1);
    const auto gens = sparse_grid_generators(q, 11, basis, cfg.max_points);
    const auto ns = make_node_set(11, gens, cfg.max_points);
    const double t_fss = now_elapsed(t0);

    auto rule = make_rule(ns, kernel, mu);
    const double estimate = integrate(rule, integrand_ex2);
    report.rows.push_back(ReportRow{.method = "ccsgkq",
                                    .n = ns.total_nodes,
                                    .j = ns.set_count(),
                                    .estimate = estimate,
                                    .truth = truth,
                                    .rel_error = rel_error(estimate, truth),
                                    .wce = rule.wce,
                                    .t_kernel_s = rule.t_kernel_s,
                                    .t_weights_s = rule.t_weights_s,
                                    .t_fss_s = t_fss,
                                    .seed = 0,
                                    .length_scale = cfg.length_scale,
                                    .warnings = rule.warnings});
  }
  finish(report);
  return report;
}

ExperimentReport run_experiment_ex3(const Ex3Config& cfg) {
  if (cfg.q < 1) throw ValidationError("invalid-config", "q must be >= 1");
  if (cfg.mc_seeds < 0) throw ValidationError("invalid-config", "mc_seeds must be >= 0");
  for (int d : cfg.dims)
    if (d < 3)
      throw ValidationError("invalid-config",
                            "need at least 3 Euler steps per dimension entry");

  ExperimentReport report{.id = "ex3", .rows = {}};
  const auto basis = NestedBasis::gauss_hermite(cfg.q);
  for (int d : cfg.dims) {
    VasicekParams p = cfg.params;
    p.steps = d;
    const int dim = d - 1;
    const double truth = bond_closed_form(p);
    const double l = cfg.length_scale_override > 0.0 ? cfg.length_scale_override
                                                     : static_cast<double>(d);
    const SymmetricMeasure mu(MeasureKind::kStdGaussian, dim);
    const GaussianKernel kernel(l);
    const auto f = [&p](std::span<const double> x) { return bond_integrand(p, x); };

    auto t0 = std::chrono::steady_clock::now();
    const auto gens = sparse_grid_generators(cfg.q, dim, basis);
    auto ns = make_node_set(dim, gens);
    if (cfg.drop_center) ns = drop_center(ns);
    const double t_fss = now_elapsed(t0);

    auto rule = make_rule(ns, kernel, mu);
    const double estimate = integrate(rule, f);
    report.rows.push_back(ReportRow{.method = "ghsgkq",
                                    .n = ns.total_nodes,
                                    .j = ns.set_count(),
                                    .estimate = estimate,
                                    .truth = truth,
                                    .rel_error = rel_error(estimate, truth),
                                    .wce = rule.wce,
                                    .t_kernel_s = rule.t_kernel_s,
                                    .t_weights_s = rule.t_weights_s,
                                    .t_fss_s = t_fss,
                                    .seed = 0,
                                    .length_scale = l,
                                    .warnings = rule.warnings});

    // Plain Monte Carlo with the quadrature's node count, per seed.
    for (int s = 0; s < cfg.mc_seeds; ++s) {
      Rng rng(mix_seed(cfg.mc_seed0, d, s));
      std::vector<double> x(dim);
      double acc = 0.0;
      for (std::int64_t i = 0; i < ns.total_nodes; ++i) {
        for (auto& v : x) v = rng.normal();
        acc += bond_integrand(p, x);
      }
      const double estimate_mc = acc / static_cast<double>(ns.total_nodes);
      report.rows.push_back(ReportRow{.method = "mc",
                                      .n = ns.total_nodes,
                                      .j = 0,
                                      .estimate = estimate_mc,
                                      .truth = truth,
                                      .rel_error = rel_error(estimate_mc, truth),
                                      .wce = 0.0,
                                      .t_kernel_s = 0.0,
                                      .t_weights_s = 0.0,
                                      .t_fss_s = 0.0,
                                      .seed = static_cast<std::uint64_t>(s),
                                      .length_scale = 0.0,
                                      .warnings = {}});
    }
  }
  finish(report);
  return report;
}

}  // namespace symquad

#include "symquad/node_selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "symquad/errors.hpp"
#include "symquad/rng.hpp"

namespace symquad {

namespace {

// Enumerates non-increasing compositions of total into exactly `slots`
// parts >= 1, lexicographically descending, invoking fn on each.
template <typename Fn>
void for_each_partition(int total, int slots, int max_part,
                        std::vector<int>& parts, Fn&& fn) {
  if (slots == 1) {
    if (total <= max_part) {
      parts.push_back(total);
      fn(parts);
      parts.pop_back();
    }
    return;
  }
  const int lo = (total + slots - 1) / slots;  // keep parts non-increasing
  for (int p = std::min(max_part, total - (slots - 1)); p >= lo; --p) {
    parts.push_back(p);
    for_each_partition(total - p, slots - 1, p, parts, fn);
    parts.pop_back();
  }
}

}  // namespace

std::vector<GeneratorVector> sparse_grid_generators(int q, int d,
                                                    const NestedBasis& basis,
                                                    std::int64_t max_points) {
  if (q < 1) throw ValidationError("invalid-level", "level q must be >= 1");
  if (d < 1) throw ValidationError("invalid-dimension", "dimension must be positive");
  if (basis.max_level() < q + 1)
    throw ValidationError("insufficient-levels",
                          "basis has " + std::to_string(basis.max_level()) +
                              " levels, sparse grid level " + std::to_string(q) +
                              " needs " + std::to_string(q + 1));

  // Non-negative halves of the 1-D levels, indexed by level - 1.
  std::vector<std::vector<double>> halves;
  for (int i = 1; i <= q + 1; ++i) halves.push_back(basis.nonnegative_part(i));

  std::set<std::vector<double>> canon;
  std::vector<int> alpha;
  std::vector<double> pick(d);
  for_each_partition(d + q, d, q + 1, alpha, [&](const std::vector<int>& a) {
    // Odometer over the cartesian product of the non-negative halves.
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
      for (int j = 0; j < d; ++j) pick[j] = halves[a[j] - 1][idx[j]];
      canon.insert(canonicalize_generator(pick).values);
      int j = d - 1;
      while (j >= 0 && ++idx[j] == halves[a[j] - 1].size()) idx[j--] = 0;
      if (j < 0) break;
    }
  });

  std::vector<GeneratorVector> gens;
  gens.reserve(canon.size());
  std::int64_t total = 0;
  for (const auto& values : canon) {
    gens.push_back(canonicalize_generator(values));
    total += cardinality(gens.back());
  }
  if (total > max_points)
    throw ValidationError("set-too-large",
                          "sparse grid has " + std::to_string(total) +
                              " nodes, cap is " + std::to_string(max_points));
  return gens;
}

std::vector<GeneratorVector> random_generators(int count, int dim,
                                               MeasureKind kind,
                                               std::uint64_t seed,
                                               double truncate_below) {
  if (count < 1) throw ValidationError("invalid-generator", "count must be >= 1");
  if (dim < 1) throw ValidationError("invalid-dimension", "dimension must be positive");
  Rng rng(seed);
  std::vector<GeneratorVector> gens;
  gens.reserve(count);
  std::vector<double> draw(dim);
  int stale = 0;
  while (static_cast<int>(gens.size()) < count) {
    for (auto& v : draw) {
      v = (kind == MeasureKind::kStdGaussian) ? std::fabs(rng.normal())
                                              : std::fabs(rng.uniform(-1.0, 1.0));
      if (v < truncate_below) v = 0.0;
    }
    auto gen = canonicalize_generator(draw);
    const bool dup = std::any_of(gens.begin(), gens.end(), [&](const auto& g) {
      return generators_equal(g, gen);
    });
    if (dup) {
      if (++stale > 10000)
        throw ValidationError("duplicate-generator",
                              "could not draw distinct generators; "
                              "truncation threshold may be too coarse");
      continue;
    }
    stale = 0;
    gens.push_back(std::move(gen));
  }
  return gens;
}

double optimal_radial_generator(double length_scale) {
  if (!(length_scale > 0.0))
    throw ValidationError("invalid-kernel", "length scale must be positive");
  const double l2 = length_scale * length_scale;
  // Objective (e^{-x^2/2(1+l^2)} - e^{-x^2/2l^2}) / (1 - e^{-x^2/l^2}),
  // written through expm1 so small x does not cancel.
  const double gap = 0.5 / l2 - 0.5 / (1.0 + l2);
  const auto objective = [&](double x) {
    const double x2 = x * x;
    const double num = std::exp(-x2 * 0.5 / l2) * std::expm1(x2 * gap);
    const double den = -std::expm1(-x2 / l2);
    return num / den;
  };

  const double lo = 1e-3 * length_scale, hi = 10.0 * length_scale;
  constexpr int kScan = 400;
  int best = -1;
  double best_val = -1.0;
  for (int t = 0; t <= kScan; ++t) {
    const double x = lo + (hi - lo) * t / kScan;
    const double v = objective(x);
    if (v > best_val) {
      best_val = v;
      best = t;
    }
  }
  if (best == 0 || best == kScan)
    throw NumericalError("bracket-failure",
                         "no interior maximum in (" + std::to_string(lo) + ", " +
                             std::to_string(hi) +
                             "); rescale the length scale and retry");

  double a = lo + (hi - lo) * (best - 1) / kScan;
  double b = lo + (hi - lo) * (best + 1) / kScan;
  const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace symquad

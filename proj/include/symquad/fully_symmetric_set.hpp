#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symquad/errors.hpp"
#include "symquad/generator.hpp"

namespace symquad {

/// Default hard cap on the number of points expand will materialize.
inline constexpr std::int64_t kDefaultExpandCap = std::int64_t{1} << 25;

/// The orbit of a generator vector under coordinate permutations and sign
/// changes, with every point materialized in a deterministic order.
struct FullySymmetricSet {
  GeneratorVector generator;
  int dim = 0;
  std::int64_t size = 0;
  std::vector<double> points;  // row-major, size * dim

  std::span<const double> point(std::int64_t i) const {
    return {points.data() + i * dim, static_cast<std::size_t>(dim)};
  }
};

/// Materializes the full orbit of a canonical generator. Points are ordered
/// lexicographically by (sign-pattern index, permutation rank): the outer
/// loop assigns how many copies of each distinct non-zero value are negated
/// (last value advancing fastest) and the inner loop walks the unique
/// permutations of the signed multiset in ascending lexicographic order.
/// Throws ValidationError "set-too-large" when the cardinality exceeds
/// max_points.
FullySymmetricSet expand(const GeneratorVector& gen,
                         std::int64_t max_points = kDefaultExpandCap);

/// "(x1, x2, ...)" with round-trip precision, for diagnostics.
std::string format_point(std::span<const double> p);

/// Sum of f over every point of the set in storage order. Throws
/// NumericalError "non-finite-evaluation" naming the offending point if f
/// returns a non-finite value.
template <typename F>
double sum_over_set(const FullySymmetricSet& set, F&& f) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < set.size; ++i) {
    const double v = f(set.point(i));
    if (!std::isfinite(v))
      throw NumericalError("non-finite-evaluation",
                           "integrand returned a non-finite value at " +
                               format_point(set.point(i)));
    acc += v;
  }
  return acc;
}

}  // namespace symquad

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace symquad {

/// Default absolute tolerance for zero-snapping and merging nearly equal
/// generator entries. Generator values come from closed-form node formulas,
/// so ties are either exact or far apart.
inline constexpr double kCanonicalTol = 1e-12;

/// A canonical generator vector: d non-negative values sorted descending,
/// zeros trailing. The orbit of this vector under coordinate permutations
/// and sign changes is a fully symmetric set.
struct GeneratorVector {
  int dim = 0;
  std::vector<double> values;  // descending, zeros trailing
  /// Distinct non-zero values in descending order with their counts.
  std::vector<std::pair<double, int>> multiplicities;
  int zero_count = 0;

  /// Number of non-zero entries (the m in the cardinality formula).
  int nonzero_count() const { return dim - zero_count; }
};

/// Builds the canonical form of a raw entry list: entries with |v| <= tol
/// snap to zero, entries within tol of an earlier entry merge to that first
/// representative, and the result is sorted descending.
/// Throws ValidationError "invalid-dimension" if the list is empty and
/// "invalid-generator" if any entry is below -tol.
GeneratorVector canonicalize_generator(std::span<const double> raw,
                                       double tol = kCanonicalTol);

/// True when both canonical value lists match element-wise within tol.
bool generators_equal(const GeneratorVector& a, const GeneratorVector& b,
                      double tol = kCanonicalTol);

/// Number of points in the fully symmetric set generated by gen:
/// 2^m * d! / (m0! * m1! * ... * ml!), computed exactly in checked 64-bit
/// arithmetic. 64-bit is guaranteed safe up to d = 20 with m <= 9 distinct
/// non-zero values; beyond that the checks throw NumericalError
/// "cardinality-overflow" instead of wrapping.
std::int64_t cardinality(const GeneratorVector& gen);

}  // namespace symquad

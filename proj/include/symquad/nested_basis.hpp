#pragma once

#include <span>
#include <vector>

namespace symquad {

/// Computes the m_i = 2^{i-1} + 1 Clenshaw-Curtis points of level i (level 1
/// is {0}), sorted ascending. The non-negative half is computed and
/// mirrored, the midpoint is exact 0, and any point within 1e-14 of a
/// point of level i-1 is replaced by that earlier point so nesting is exact.
std::vector<double> clenshaw_curtis_level(int i);

/// All roots of the probabilists' Hermite polynomial of the given degree,
/// sorted ascending. Newton iteration on the orthonormal three-term
/// recurrence from asymptotic initial guesses; positive roots are computed
/// and mirrored, and odd degrees get an exact-0 middle root. Throws
/// NumericalError "no-convergence" naming the degree if Newton stalls.
std::vector<double> hermite_roots(int degree);

/// A family of nested symmetric 1-D point sets X^1 = {0} c X^2 c ... used
/// as sparse-grid building blocks.
struct NestedBasis {
  enum class Kind { kClenshawCurtis, kGaussHermite };

  Kind kind = Kind::kClenshawCurtis;
  std::vector<std::vector<double>> levels;  // levels[i-1] = X^i, ascending

  /// Clenshaw-Curtis basis with levels 1..max_level; |X^i| = 2^{i-1} + 1.
  static NestedBasis clenshaw_curtis(int max_level);

  /// Gauss-Hermite basis for sparse-grid level q: X^i holds the 2i - 1
  /// smallest-magnitude roots of the degree-(2q+1) probabilists' Hermite
  /// polynomial, i = 1..q+1. Unlike Clenshaw-Curtis, the family depends on
  /// q as a whole: bases for different q are not nested in one another.
  static NestedBasis gauss_hermite(int q);

  int max_level() const { return static_cast<int>(levels.size()); }
  std::span<const double> level(int i) const { return levels[i - 1]; }

  /// The points of X^i that are >= 0, ascending.
  std::vector<double> nonnegative_part(int i) const;
};

}  // namespace symquad

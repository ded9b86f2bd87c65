#pragma once

#include <cstdint>
#include <vector>

#include "symquad/fully_symmetric_set.hpp"
#include "symquad/generator.hpp"
#include "symquad/measure.hpp"
#include "symquad/nested_basis.hpp"

namespace symquad {

/// Decomposes the sparse grid of level q over the given basis into fully
/// symmetric sets: enumerates level multi-indices with non-increasing
/// entries summing to d + q, draws each generator coordinate from the
/// non-negative part of the matching 1-D level, canonicalizes, and
/// deduplicates. The expanded union of the result equals the sparse grid.
/// Generators come back sorted ascending lexicographically. Throws
/// ValidationError "set-too-large" (reporting the would-be node count,
/// counted without expansion) when the total exceeds max_points, and
/// "insufficient-levels" when the basis has fewer than q + 1 levels.
std::vector<GeneratorVector> sparse_grid_generators(
    int q, int d, const NestedBasis& basis,
    std::int64_t max_points = kDefaultExpandCap);

/// Draws `count` random generators with coordinates sampled componentwise
/// from the measure's positive half: |N(0,1)| for the Gaussian measure,
/// |U(-1,1)| for the cube. Deterministic under seed; duplicate draws are
/// redrawn. truncate_below > 0 snaps coordinates smaller than the threshold
/// to zero before canonicalization (a heuristic for forcing lower-dimensional
/// sets; off by default).
std::vector<GeneratorVector> random_generators(int count, int dim,
                                               MeasureKind kind,
                                               std::uint64_t seed,
                                               double truncate_below = 0.0);

/// The radial generator lambda* maximizing the worst-case-error reduction
/// of the two-set rule {origin, [lambda, 0, ..., 0]} for a Gaussian kernel
/// with the given length scale under the standard Gaussian measure. The
/// objective does not involve the dimension, so neither does lambda*.
/// Bracketed golden-section search to 1e-10 in lambda; throws
/// NumericalError "bracket-failure" if no interior maximum is bracketed
/// (suggesting a length-scale rescale).
double optimal_radial_generator(double length_scale);

}  // namespace symquad

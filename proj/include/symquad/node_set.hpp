#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symquad/fully_symmetric_set.hpp"
#include "symquad/generator.hpp"

namespace symquad {

/// Ordered union of distinct fully symmetric sets. Nodes of one set are
/// contiguous in storage and sets keep their construction order, so a rule's
/// per-set weights map onto nodes by simple repetition.
struct SymmetricNodeSet {
  int dim = 0;
  std::vector<FullySymmetricSet> sets;
  std::int64_t total_nodes = 0;

  std::int64_t set_count() const { return static_cast<std::int64_t>(sets.size()); }
};

/// Expands each generator and assembles the union. Throws ValidationError
/// "duplicate-generator" when two generators are equal under canonical
/// equality, "dimension-mismatch" when a generator's dimension differs from
/// dim, and propagates "set-too-large" from expansion.
SymmetricNodeSet make_node_set(int dim, std::span<const GeneratorVector> gens,
                               std::int64_t max_points = kDefaultExpandCap);

/// Returns the union with the all-zero generator set removed, if present.
/// Weights must be re-solved on the result. Removing the center improves
/// conditioning when the center weight would dominate.
SymmetricNodeSet drop_center(const SymmetricNodeSet& ns);

/// Concatenated nodes of every set in storage order, row-major n x dim.
std::vector<double> all_nodes(const SymmetricNodeSet& ns);

}  // namespace symquad

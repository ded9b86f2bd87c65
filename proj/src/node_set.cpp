#include "symquad/node_set.hpp"

#include <string>

#include "symquad/errors.hpp"

namespace symquad {

SymmetricNodeSet make_node_set(int dim, std::span<const GeneratorVector> gens,
                               std::int64_t max_points) {
  if (dim < 1)
    throw ValidationError("invalid-dimension",
                          "node set dimension must be positive");
  SymmetricNodeSet ns;
  ns.dim = dim;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].dim != dim)
      throw ValidationError("dimension-mismatch",
                            "generator " + std::to_string(j) + " has dimension " +
                                std::to_string(gens[j].dim) + ", node set has " +
                                std::to_string(dim));
    for (std::size_t i = 0; i < j; ++i)
      if (generators_equal(gens[i], gens[j]))
        throw ValidationError("duplicate-generator",
                              "generators " + std::to_string(i) + " and " +
                                  std::to_string(j) + " are equal");
    ns.sets.push_back(expand(gens[j], max_points));
    ns.total_nodes += ns.sets.back().size;
  }
  return ns;
}

SymmetricNodeSet drop_center(const SymmetricNodeSet& ns) {
  SymmetricNodeSet out;
  out.dim = ns.dim;
  for (const auto& set : ns.sets) {
    if (set.generator.nonzero_count() == 0) continue;
    out.sets.push_back(set);
    out.total_nodes += set.size;
  }
  return out;
}

std::vector<double> all_nodes(const SymmetricNodeSet& ns) {
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(ns.total_nodes) * ns.dim);
  for (const auto& set : ns.sets)
    nodes.insert(nodes.end(), set.points.begin(), set.points.end());
  return nodes;
}

}  // namespace symquad

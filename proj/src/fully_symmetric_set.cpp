#include "symquad/fully_symmetric_set.hpp"

#include <algorithm>
#include <cstdio>

#include "symquad/errors.hpp"

namespace symquad {

std::string format_point(std::span<const double> p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += ")";
  return out;
}

FullySymmetricSet expand(const GeneratorVector& gen, std::int64_t max_points) {
  for (int i = 0; i + 1 < gen.dim; ++i)
    if (gen.values[i] < gen.values[i + 1])
      throw ValidationError("invalid-generator",
                            "expand requires a canonical generator");
  const std::int64_t n = cardinality(gen);
  if (n > max_points)
    throw ValidationError("set-too-large",
                          "fully symmetric set has " + std::to_string(n) +
                              " points, cap is " + std::to_string(max_points));

  const int d = gen.dim;
  const int groups = static_cast<int>(gen.multiplicities.size());

  // Symbol table in ascending value order: -v1 < ... < -vL < 0 < vL < ... < v1
  // (generator values are descending, so the last group is the smallest).
  // Codes index this table, so lexicographic order on code vectors matches
  // lexicographic order on the realized points.
  std::vector<double> symbol(2 * groups + 1);
  for (int l = 0; l < groups; ++l) {
    symbol[l] = -gen.multiplicities[l].first;
    symbol[2 * groups - l] = gen.multiplicities[l].first;
  }
  symbol[groups] = 0.0;

  FullySymmetricSet set;
  set.generator = gen;
  set.dim = d;
  set.size = n;
  set.points.reserve(static_cast<std::size_t>(n) * d);

  // negated[l] counts how many of group l's entries carry a minus sign.
  std::vector<int> negated(groups, 0);
  std::vector<int> codes(d);
  for (;;) {
    int pos = 0;
    for (int l = 0; l < groups; ++l)
      for (int c = 0; c < negated[l]; ++c) codes[pos++] = l;
    for (int c = 0; c < gen.zero_count; ++c) codes[pos++] = groups;
    for (int l = groups - 1; l >= 0; --l)
      for (int c = 0; c < gen.multiplicities[l].second - negated[l]; ++c)
        codes[pos++] = 2 * groups - l;

    do {
      for (int i = 0; i < d; ++i) set.points.push_back(symbol[codes[i]]);
    } while (std::next_permutation(codes.begin(), codes.end()));

    // Odometer over sign counts, last group fastest.
    int l = groups - 1;
    while (l >= 0 && negated[l] == gen.multiplicities[l].second)
      negated[l--] = 0;
    if (l < 0) break;
    ++negated[l];
  }
  return set;
}

}  // namespace symquad

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "symquad/errors.hpp"
#include "symquad/fully_symmetric_set.hpp"
#include "symquad/generator.hpp"
#include "symquad/rng.hpp"

namespace {

using namespace symquad;

// Every signed permutation of the generator, deduplicated by value.
std::set<std::vector<double>> orbit_oracle(std::vector<double> gen) {
  std::set<std::vector<double>> out;
  const int d = static_cast<int>(gen.size());
  std::sort(gen.begin(), gen.end());
  do {
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      std::vector<double> v(gen);
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) v[i] = -v[i];
      for (double& x : v)
        if (x == 0.0) x = 0.0;  // collapse -0
      out.insert(v);
    }
  } while (std::next_permutation(gen.begin(), gen.end()));
  return out;
}

std::set<std::vector<double>> as_point_set(const FullySymmetricSet& set) {
  std::set<std::vector<double>> out;
  for (std::int64_t i = 0; i < set.size; ++i) {
    const auto p = set.point(i);
    std::vector<double> v(p.begin(), p.end());
    for (double& x : v)
      if (x == 0.0) x = 0.0;
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("canonicalize sorts descending and derives counts") {
  const auto gen = canonicalize_generator(std::vector<double>{0.5, 2.0, 0.0, 0.5});
  CHECK(gen.dim == 4);
  CHECK(gen.values == std::vector<double>{2.0, 0.5, 0.5, 0.0});
  CHECK(gen.zero_count == 1);
  CHECK(gen.nonzero_count() == 3);
  REQUIRE(gen.multiplicities.size() == 2);
  CHECK(gen.multiplicities[0] == std::pair<double, int>{2.0, 1});
  CHECK(gen.multiplicities[1] == std::pair<double, int>{0.5, 2});
}

TEST_CASE("canonicalize groups near-ties to the first representative") {
  const double eps = 0.4 * kCanonicalTol;
  const auto gen =
      canonicalize_generator(std::vector<double>{1.0, 1.0 + eps, 1.0 - eps});
  CHECK(gen.values == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(gen.multiplicities.size() == 1);
  CHECK(gen.multiplicities[0].second == 3);
}

TEST_CASE("canonicalize snaps tiny entries to zero") {
  const auto gen =
      canonicalize_generator(std::vector<double>{1.0, 0.5 * kCanonicalTol});
  CHECK(gen.values == std::vector<double>{1.0, 0.0});
  CHECK(gen.zero_count == 1);
}

TEST_CASE("canonicalize is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<double> raw(d);
    for (double& v : raw) v = std::fabs(rng.normal());
    const auto once = canonicalize_generator(raw);
    const auto twice = canonicalize_generator(once.values);
    CHECK(once.values == twice.values);
    CHECK(once.zero_count == twice.zero_count);
    CHECK(once.multiplicities == twice.multiplicities);
  }
}

TEST_CASE("canonicalize rejects bad input") {
  CHECK_THROWS_WITH_AS(canonicalize_generator(std::vector<double>{}),
                       doctest::Contains("dimension"), ValidationError);
  CHECK_THROWS_AS(canonicalize_generator(std::vector<double>{1.0, -0.5}),
                  ValidationError);
  CHECK_THROWS_AS(
      canonicalize_generator(std::vector<double>{std::nan("")}),
      ValidationError);
  CHECK_THROWS_AS(canonicalize_generator(std::vector<double>{1.0, INFINITY}),
                  ValidationError);
}

TEST_CASE("cardinality on known values") {
  // d = 5, lambda = (4, 3, 2, 1): one zero, four distinct non-zeros.
  CHECK(cardinality(canonicalize_generator(
            std::vector<double>{4, 3, 2, 1, 0})) == 1920);
  CHECK(cardinality(canonicalize_generator(std::vector<double>{0, 0, 0})) == 1);
  CHECK(cardinality(canonicalize_generator(std::vector<double>{1})) == 2);
  CHECK(cardinality(canonicalize_generator(std::vector<double>{1, 1})) == 4);
  CHECK(cardinality(canonicalize_generator(std::vector<double>{2, 1})) == 8);
}

TEST_CASE("cardinality overflow throws instead of wrapping") {
  std::vector<double> big(25);
  for (int i = 0; i < 25; ++i) big[i] = i + 1.0;
  CHECK_THROWS_WITH_AS(cardinality(canonicalize_generator(big)),
                       doctest::Contains("64-bit"), NumericalError);
}

TEST_CASE("expand equals the signed-permutation orbit") {
  const std::vector<std::vector<double>> cases = {
      {0.0},          {1.5},           {1.0, 0.0},      {1.0, 1.0},
      {2.0, 1.0},     {1.0, 0.0, 0.0}, {2.0, 2.0, 1.0}, {3.0, 2.0, 1.0},
      {1.0, 1.0, 1.0, 1.0},            {2.0, 1.0, 1.0, 0.0}};
  for (const auto& raw : cases) {
    CAPTURE(raw);
    const auto gen = canonicalize_generator(raw);
    const auto set = expand(gen);
    CHECK(set.size == cardinality(gen));
    CHECK(as_point_set(set) == orbit_oracle(raw));
  }
}

TEST_CASE("random generators: size, distinctness, norm, closure") {
  Rng rng(29);
  const double alphabet[] = {0.0, 0.5, 1.0, 1.0, 1.7};
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 8);
    std::vector<double> raw(d);
    for (double& v : raw) v = alphabet[rng.next_u64() % 5];
    const auto gen = canonicalize_generator(raw);
    const auto set = expand(gen);
    REQUIRE(set.size == cardinality(gen));

    const double r2 = [&] {
      double s = 0.0;
      for (double v : gen.values) s += v * v;
      return s;
    }();
    std::set<std::vector<double>> seen;
    for (std::int64_t i = 0; i < set.size; ++i) {
      const auto p = set.point(i);
      double s = 0.0;
      for (double v : p) s += v * v;
      CHECK(s == doctest::Approx(r2).epsilon(1e-12));
      std::vector<double> v(p.begin(), p.end());
      for (double& x : v)
        if (x == 0.0) x = 0.0;
      CHECK(seen.insert(std::move(v)).second);
    }

    // Closure spot check: a random signed permutation of a random point
    // stays in the set.
    if (set.size > 1) {
      const auto p = set.point(static_cast<std::int64_t>(rng.next_u64() %
                                                         set.size));
      std::vector<double> v(p.begin(), p.end());
      for (int i = d - 1; i > 0; --i)
        std::swap(v[i], v[rng.next_u64() % (i + 1)]);
      for (double& x : v) {
        if (rng.next_u64() & 1) x = -x;
        if (x == 0.0) x = 0.0;
      }
      CHECK(seen.count(v) == 1);
    }
  }
}

TEST_CASE("expand is deterministic") {
  const auto gen = canonicalize_generator(std::vector<double>{2.0, 1.0, 1.0, 0.0});
  const auto a = expand(gen);
  const auto b = expand(gen);
  CHECK(a.points == b.points);
}

TEST_CASE("expand enforces the point cap") {
  const auto gen = canonicalize_generator(std::vector<double>{3, 2, 1});
  CHECK_THROWS_WITH_AS(expand(gen, 47), doctest::Contains("48"),
                       ValidationError);
  CHECK_NOTHROW(expand(gen, 48));
}

TEST_CASE("expand requires a canonical generator") {
  GeneratorVector gen;
  gen.dim = 2;
  gen.values = {1.0, 2.0};  // ascending, not canonical
  CHECK_THROWS_AS(expand(gen), ValidationError);
}

TEST_CASE("sum_over_set flags non-finite evaluations") {
  const auto set = expand(canonicalize_generator(std::vector<double>{1.0, 0.0}));
  CHECK(sum_over_set(set, [](std::span<const double>) { return 1.0; }) ==
        doctest::Approx(4.0));
  CHECK_THROWS_WITH_AS(
      sum_over_set(set,
                   [](std::span<const double> p) { return std::log(p[0]); }),
      doctest::Contains("non-finite"), NumericalError);
}

}  // TEST_SUITE

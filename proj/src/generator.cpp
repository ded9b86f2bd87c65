#include "symquad/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symquad/errors.hpp"

namespace symquad {

GeneratorVector canonicalize_generator(std::span<const double> raw,
                                       double tol) {
  if (raw.empty()) throw ValidationError("invalid-dimension", "generator has dimension 0");
  // Group entries in input order against the first representative each one
  // falls within tol of, so near-ties collapse to one exact value.
  std::vector<double> reps;
  std::vector<double> snapped(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    double v = raw[i];
    if (!std::isfinite(v))
      throw ValidationError("invalid-generator",
                            "generator entry " + std::to_string(i) + " is not finite");
    if (v < -tol)
      throw ValidationError("invalid-generator",
                            "generator entry " + std::to_string(i) + " is negative (" +
                                std::to_string(v) + ")");
    if (std::fabs(v) <= tol) v = 0.0;
    double rep = v;
    for (double r : reps) {
      if (std::fabs(v - r) <= tol) {
        rep = r;
        break;
      }
    }
    if (rep == v) reps.push_back(v);
    snapped[i] = rep;
  }
  std::sort(snapped.begin(), snapped.end(), std::greater<double>());

  GeneratorVector gen;
  gen.dim = static_cast<int>(snapped.size());
  gen.values = std::move(snapped);
  for (double v : gen.values) {
    if (v == 0.0) {
      ++gen.zero_count;
    } else if (!gen.multiplicities.empty() && gen.multiplicities.back().first == v) {
      ++gen.multiplicities.back().second;
    } else {
      gen.multiplicities.emplace_back(v, 1);
    }
  }
  return gen;
}

bool generators_equal(const GeneratorVector& a, const GeneratorVector& b,
                      double tol) {
  if (a.dim != b.dim) return false;
  for (int i = 0; i < a.dim; ++i)
    if (std::fabs(a.values[i] - b.values[i]) > tol) return false;
  return true;
}

namespace {

[[noreturn]] void throw_overflow() {
  throw NumericalError("cardinality-overflow",
                       "fully symmetric set cardinality exceeds 64-bit range");
}

// Multiplies acc by C(n, k). The division is exact at every step, and the
// mid-chain guard only protects the 128-bit intermediate from wrapping; the
// caller applies the tight 64-bit bound after each completed binomial.
void mul_binomial_checked(unsigned __int128& acc, int n, int k) {
  if (k > n - k) k = n - k;
  for (int i = 1; i <= k; ++i) {
    acc *= static_cast<unsigned>(n - k + i);
    acc /= static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(1) << 100) throw_overflow();
  }
}

}  // namespace

std::int64_t cardinality(const GeneratorVector& gen) {
  const int m = gen.nonzero_count();
  if (m >= 63) throw_overflow();
  constexpr auto kMax = static_cast<unsigned __int128>(INT64_MAX);
  unsigned __int128 acc = 1;
  // d! / (m0! m1! ... ml!) as a chain of binomial coefficients. The partial
  // product only grows, so each completed binomial gets the tight check.
  int rem = gen.dim;
  mul_binomial_checked(acc, rem, gen.zero_count);
  if (acc > kMax) throw_overflow();
  rem -= gen.zero_count;
  for (const auto& [value, count] : gen.multiplicities) {
    (void)value;
    mul_binomial_checked(acc, rem, count);
    if (acc > kMax) throw_overflow();
    rem -= count;
  }
  acc <<= m;
  if (acc > kMax) throw_overflow();
  return static_cast<std::int64_t>(acc);
}

}  // namespace symquad

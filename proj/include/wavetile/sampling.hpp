#pragma once

#include <cstdint>
#include <random>

#include "wavetile/dyadic.hpp"
#include "wavetile/errors.hpp"

namespace wavetile {

// Uniform draw in [0, n) by rejection. std::uniform_int_distribution is
// implementation-defined; this keeps seeded runs bit-identical everywhere.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw ParseError("empty draw range");
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

// Uniform grid point of (lo, hi] at spacing 2^-resolution, exact. The
// interval must be a positive whole number of grid steps (at most 2^62).
inline Dyadic random_dyadic_in(std::mt19937_64& rng, const DyadicInterval& iv,
                               int resolution = 30) {
  Dyadic steps = iv.length().mul_pow2(resolution);
  if (!steps.is_integer() || steps.sign() <= 0) {
    throw ParseError("interval is not a whole number of sample grid steps");
  }
  if (steps.exp() > 62) throw ParseError("too many sample grid steps");
  BigInt n = steps.mant() << steps.exp();
  if (n > BigInt(1) << 62) throw ParseError("too many sample grid steps");
  std::uint64_t j = uniform_below(rng, n.convert_to<std::uint64_t>()) + 1;
  return iv.lo + Dyadic(BigInt(j), -resolution);
}

}  // namespace wavetile

#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace naiveml {

// All randomized code draws through these helpers instead of the standard
// distributions, whose output is implementation-defined. Runs must replay
// byte-identically across toolchains for the same seed.
using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// Uniform index in [0, n); rejection sampling, no modulo bias. n must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t span = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % span);
}

// Inclusive on both ends.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
  return lo + static_cast<std::int64_t>(uniform_index(rng, static_cast<std::size_t>(span)));
}

// Fisher-Yates; unambiguous draw order, unlike std::shuffle.
template <class T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace naiveml

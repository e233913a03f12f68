#pragma once

#include <cmath>
#include <cstdint>

#include "gq/types.hpp"

namespace gq {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based generator: output i depends only on (seed, i), so sample
/// streams can be split across workers and still reproduce bitwise for any
/// worker count.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t word(std::uint64_t counter) const {
    return detail::mix64(seed + (counter + 1) * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform draw in the open interval (0, 1).
  Real uniform(std::uint64_t counter) const {
    return (static_cast<Real>(word(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Sample i of the circularly-symmetric complex Gaussian with total
  /// variance sigma2; consumes counters 2i and 2i+1. Radial inverse
  /// transform: |z| = sigma*sqrt(-ln U), arg z = 2*pi*V.
  Complex gaussian(std::uint64_t i, Real sigma2) const {
    const Real mag = std::sqrt(-sigma2 * std::log(uniform(2 * i)));
    const Real phase = 2.0 * kPi * uniform(2 * i + 1);
    return {mag * std::cos(phase), mag * std::sin(phase)};
  }
};

}  // namespace gq

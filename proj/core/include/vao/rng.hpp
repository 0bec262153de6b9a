#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "vao/constants.hpp"

namespace vao {

/// splitmix64 mix step; used to derive independent stream seeds from
/// (master seed, stream tags) without correlation between streams.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  return mix_seed(mix_seed(mix_seed(master ^ mix_seed(a)) ^ mix_seed(b)) ^ mix_seed(c));
}

/// Uniform double in [0,1) from the top 53 bits of the generator output.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard circular complex Gaussian via Box-Muller (unit variance per
/// complex sample, i.e. 1/2 per quadrature). Hand-rolled so that results do
/// not depend on the standard library's normal_distribution internals.
inline cplx complex_gaussian(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-std::log(u1));
  return r * phasor(2.0 * kPi * u2);
}

}  // namespace vao

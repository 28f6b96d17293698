#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace gbb {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; whitens seeds and tag words before they reach the
// mersenne twister.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed derivation rule used by every sweep and repetition:
//   mix_seed(master, t1, t2, ...) = splitmix64(... splitmix64(splitmix64(master) ^ t1) ^ t2 ...)
// so a row's stream is reproducible from (master seed, tag words) alone.
inline std::uint64_t mix_seed(std::uint64_t master) { return splitmix64(master); }

template <typename... Tags>
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t tag, Tags... rest) {
  return mix_seed(splitmix64(master) ^ tag, rest...);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

// Running sum of a weight vector, for inverse-CDF draws.
inline std::vector<double> cumulative_weights(const std::vector<double>& weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  return cdf;
}

// Inverse-CDF draw over indices 0..cdf.size()-1. cdf must be nondecreasing
// with cdf.back() ~= 1.
inline int draw_index(const std::vector<double>& cdf, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin());
}

}  // namespace gbb

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "seqsynth/error.hpp"

namespace seqsynth {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the `index`-th independent substream of `seed`.
///
/// Defined as mix64(mix64(seed) ^ index). The inner mix keeps (seed, index)
/// pairs such as (0, 1) and (1, 0) from colliding. Every parallel task derives
/// its generator from this function alone, so results never depend on
/// scheduling.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ index);
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) by rejection; n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (std::numeric_limits<std::uint64_t>::max() - n + 1) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

/// Vose alias table over nonnegative weights. O(1) sampling.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    detail::require(n > 0, "alias table needs at least one weight");
    double total = 0.0;
    for (double w : weights) {
      detail::require(w >= 0.0 && std::isfinite(w), "alias table weights must be finite and nonnegative");
      total += w;
    }
    detail::require(total > 0.0, "alias table weights must have positive mass");

    prob_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::size_t> small;
    std::vector<std::size_t> large;
    for (std::size_t i = 0; i < n; ++i) {
      alias_[i] = i;
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
      const std::size_t s = small.back();
      small.pop_back();
      const std::size_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding, except zero weights stranded by it.
    for (std::size_t i : large) prob_[i] = 1.0;
    for (std::size_t i : small) {
      if (weights[i] > 0.0) continue;
      prob_[i] = 0.0;
      alias_[i] = first_positive(weights);
    }
  }

  std::size_t size() const noexcept { return prob_.size(); }

  std::size_t sample(Rng& rng) const {
    const std::size_t column = uniform_index(rng, prob_.size());
    return uniform01(rng) < prob_[column] ? column : alias_[column];
  }

 private:
  static std::size_t first_positive(std::span<const double> weights) {
    std::size_t i = 0;
    while (weights[i] <= 0.0) ++i;
    return i;
  }

  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace seqsynth

#pragma once

// Planted ground-truth corpus: a sparse random first-order chain whose
// transitions mostly stay inside item communities, so streams carry both
// sequence and co-view structure.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "seqsynth/corpus.hpp"

namespace seqsynth::planted {

struct PlantedParams {
  std::size_t items = 200;
  std::size_t streams = 2000;
  std::size_t communities = 10;
  std::size_t min_out_degree = 3;
  std::size_t max_out_degree = 8;
  double in_community = 0.85;
  double mean_length = 9.0;
  double length_stddev = 3.0;
  std::uint64_t seed = 20240611;
};

struct PlantedChain {
  std::vector<std::vector<std::uint32_t>> successors;
  std::vector<std::vector<double>> weights;
  std::vector<double> start_weights;
};

inline PlantedChain make_chain(const PlantedParams& p, std::mt19937_64& rng) {
  PlantedChain chain;
  const std::size_t per = p.items / p.communities;
  std::uniform_int_distribution<std::size_t> degree(p.min_out_degree, p.max_out_degree);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any(0, p.items - 1);
  std::uniform_int_distribution<std::size_t> local(0, per - 1);
  chain.successors.resize(p.items);
  chain.weights.resize(p.items);
  for (std::size_t i = 0; i < p.items; ++i) {
    const std::size_t community = i / per;
    const std::size_t d = degree(rng);
    while (chain.successors[i].size() < d) {
      const std::size_t j = unit(rng) < p.in_community ? community * per + local(rng) : any(rng);
      if (j == i) continue;
      bool dup = false;
      for (auto s : chain.successors[i]) dup = dup || s == j;
      if (dup) continue;
      chain.successors[i].push_back(static_cast<std::uint32_t>(j));
      // Heavy-tailed weights so successor preferences are well separated.
      chain.weights[i].push_back(std::exp(2.0 * unit(rng)));
    }
  }
  chain.start_weights.resize(p.items);
  for (std::size_t i = 0; i < p.items; ++i) chain.start_weights[i] = 1.0 / std::sqrt(static_cast<double>(i % per + 1));
  return chain;
}

inline ClickstreamSet make_corpus(const PlantedParams& p = {}) {
  std::mt19937_64 rng(p.seed);
  const PlantedChain chain = make_chain(p, rng);
  std::discrete_distribution<std::size_t> start(chain.start_weights.begin(), chain.start_weights.end());
  std::normal_distribution<double> length(p.mean_length, p.length_stddev);
  std::vector<Clickstream> streams;
  streams.reserve(p.streams);
  for (std::size_t s = 0; s < p.streams; ++s) {
    const auto len = static_cast<std::size_t>(std::max(2.0, std::round(length(rng))));
    Clickstream stream{static_cast<ItemId>(start(rng))};
    while (stream.size() < len) {
      const auto cur = stream.back();
      std::discrete_distribution<std::size_t> next(chain.weights[cur].begin(), chain.weights[cur].end());
      stream.push_back(chain.successors[cur][next(rng)]);
    }
    streams.push_back(std::move(stream));
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < p.items; ++i) labels.push_back("item" + std::to_string(i));
  return ClickstreamSet(std::make_shared<const Vocabulary>(std::move(labels)), std::move(streams));
}

}  // namespace seqsynth::planted

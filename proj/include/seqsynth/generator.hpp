#pragma once

// Memory biased random walk (MBRW) with random jumps.
//
// The next item j after history (..., w2, w1, c) is drawn with weight
//
//   DS[j, c] * CVS[j, w1] * CVS[j, w2] * ... (m memory factors)
//
// normalized over all j, then mixed with a uniform jump of probability
// epsilon. Early in a walk the window holds fewer than m items, so the
// kernel starts as a first-order chain over DS and picks up one CVS factor
// per step.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "seqsynth/corpus.hpp"
#include "seqsynth/random.hpp"
#include "seqsynth/seqgraph.hpp"

namespace seqsynth {

/// Distribution of the per-walk memory size m. Samples are clamped to >= 0.
class MemoryDistribution {
 public:
  struct Constant {
    std::size_t memory;
  };
  struct RoundedGaussian {
    double mean;
    double stddev;
  };

  static MemoryDistribution constant(std::size_t memory) { return MemoryDistribution(Constant{memory}); }

  static MemoryDistribution rounded_gaussian(double mean, double stddev) {
    detail::require(std::isfinite(mean) && stddev >= 0.0 && std::isfinite(stddev),
                    "memory gaussian needs finite mean and nonnegative stddev");
    return MemoryDistribution(RoundedGaussian{mean, stddev});
  }

  /// "constant:m" or "gaussian:mean,stddev".
  static MemoryDistribution parse(std::string_view spec) {
    const auto colon = spec.find(':');
    detail::require(colon != std::string_view::npos, "memory distribution must look like kind:params");
    const std::string_view kind = spec.substr(0, colon);
    const auto params = detail::split(spec.substr(colon + 1), ',');
    if (kind == "constant" && params.size() == 1) {
      const auto m = detail::parse_number<std::size_t>(params[0]);
      detail::require(m.has_value(), "bad memory size in '" + std::string(spec) + "'");
      return constant(*m);
    }
    if (kind == "gaussian" && params.size() == 2) {
      const auto mean = detail::parse_number<double>(params[0]);
      const auto stddev = detail::parse_number<double>(params[1]);
      detail::require(mean && stddev, "bad gaussian parameters in '" + std::string(spec) + "'");
      return rounded_gaussian(*mean, *stddev);
    }
    throw InvalidArgument("unknown memory distribution '" + std::string(spec) + "'");
  }

  std::size_t sample(Rng& rng) const {
    if (const auto* c = std::get_if<Constant>(&kind_)) return c->memory;
    const auto& g = std::get<RoundedGaussian>(kind_);
    const double x = std::normal_distribution<double>(g.mean, g.stddev)(rng);
    return x <= 0.0 ? 0 : static_cast<std::size_t>(std::llround(x));
  }

  std::string describe() const {
    if (const auto* c = std::get_if<Constant>(&kind_)) return "constant:" + std::to_string(c->memory);
    const auto& g = std::get<RoundedGaussian>(kind_);
    return "gaussian:" + detail::format_double(g.mean) + "," + detail::format_double(g.stddev);
  }

 private:
  explicit MemoryDistribution(std::variant<Constant, RoundedGaussian> kind) : kind_(kind) {}

  std::variant<Constant, RoundedGaussian> kind_;
};

struct MbrwConfig {
  MemoryDistribution memory = MemoryDistribution::rounded_gaussian(3.0, 2.0);
  LengthDistribution length = LengthDistribution::rounded_gaussian(9.0, 2.0);
  double epsilon = 1e-4;
  std::size_t stream_count = 1;
  StartDistribution start = StartDistribution::uniform();
  std::uint64_t seed = 0;

  void validate(std::size_t item_count) const {
    detail::require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must be in [0, 1]");
    detail::require(stream_count >= 1, "stream count must be >= 1");
    detail::require(item_count >= 1, "generation needs at least one item");
    detail::require(start.is_uniform() || start.weights().size() == item_count,
                    "start distribution does not match the item count");
  }
};

/// Dense next-item distribution; used for inspection and testing only.
struct TransitionDistribution {
  std::vector<double> probabilities;

  double sum() const {
    double s = 0.0;
    for (double p : probabilities) s += p;
    return s;
  }
};

/// Per-walk state: items emitted so far and this walk's memory budget.
struct WalkState {
  Clickstream history;
  std::size_t memory = 0;
};

struct Candidate {
  ItemId item;
  double weight;
};

struct GenerationStats {
  std::uint64_t hops = 0;
  std::uint64_t epsilon_jumps = 0;
  std::uint64_t dead_end_fallbacks = 0;
  std::uint64_t zero_memory_walks = 0;

  GenerationStats& operator+=(const GenerationStats& o) {
    hops += o.hops;
    epsilon_jumps += o.epsilon_jumps;
    dead_end_fallbacks += o.dead_end_fallbacks;
    zero_memory_walks += o.zero_memory_walks;
    return *this;
  }
};

namespace detail {

inline void check_dimensions(const DsMatrix& ds, const CvsMatrix& cvs) {
  require(ds.n() == cvs.n(), "DS and CVS dimensions differ");
}

/// Items preceding the current one that enter the memory window, most recent first.
inline std::size_t window_size(std::size_t history_size, std::size_t memory) {
  return std::min(memory, history_size - 1);
}

/// Positive-weight candidates for the next item; returns their total weight.
/// Candidates come from DS column `current` only, in ascending item order.
inline double kernel_candidates(const DsMatrix& ds, const CvsMatrix& cvs, std::span<const ItemId> history,
                                std::size_t memory, std::vector<Candidate>& out) {
  out.clear();
  const ItemId current = history.back();
  const std::size_t window = window_size(history.size(), memory);
  const std::size_t first = history.size() - 1 - window;  // window = history[first, size-1)
  double total = 0.0;
  for (const auto& e : ds.counts().column(current)) {
    double w = static_cast<double>(e.count);
    for (std::size_t k = history.size() - 1; k-- > first;) {
      const Count c = cvs.at(e.index, history[k]);
      if (c == 0) {
        w = 0.0;
        break;
      }
      w *= static_cast<double>(c);
    }
    if (w > 0.0) {
      out.push_back({e.index, w});
      total += w;
    }
  }
  if (std::isfinite(total)) return total;

  // Products overflowed; redo in log space relative to the largest weight.
  std::vector<double> logs;
  logs.reserve(out.size());
  for (const auto& cand : out) {
    double lw = std::log(static_cast<double>(ds.at(cand.item, current)));
    for (std::size_t k = history.size() - 1; k-- > first;) {
      lw += std::log(static_cast<double>(cvs.at(cand.item, history[k])));
    }
    logs.push_back(lw);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].weight = std::exp(logs[i] - top);
    total += out[i].weight;
  }
  return total;
}

/// Draws the next item, counting jumps and dead ends into `stats`.
inline ItemId next_item(const DsMatrix& ds, const CvsMatrix& cvs, std::span<const ItemId> history,
                        std::size_t memory, double epsilon, Rng& rng, std::vector<Candidate>& scratch,
                        GenerationStats& stats) {
  const std::size_t n = ds.n();
  ++stats.hops;
  if (epsilon > 0.0 && uniform01(rng) < epsilon) {
    ++stats.epsilon_jumps;
    return static_cast<ItemId>(uniform_index(rng, n));
  }
  const double total = kernel_candidates(ds, cvs, history, memory, scratch);
  if (!(total > 0.0)) {
    ++stats.dead_end_fallbacks;
    return static_cast<ItemId>(uniform_index(rng, n));
  }
  double target = uniform01(rng) * total;
  for (const auto& cand : scratch) {
    target -= cand.weight;
    if (target < 0.0) return cand.item;
  }
  return scratch.back().item;  // rounding left a sliver past the end
}

}  // namespace detail

/// The normalized MBRW kernel for `history`, or nullopt when every candidate
/// has zero weight (a dead end).
inline std::optional<TransitionDistribution> mbrw_kernel(const DsMatrix& ds, const CvsMatrix& cvs,
                                                         std::span<const ItemId> history, std::size_t memory) {
  detail::check_dimensions(ds, cvs);
  detail::require(!history.empty(), "history must be nonempty");
  for (ItemId id : history) detail::require(id < ds.n(), "history item out of range");
  std::vector<Candidate> candidates;
  const double total = detail::kernel_candidates(ds, cvs, history, memory, candidates);
  if (!(total > 0.0)) return std::nullopt;
  TransitionDistribution dist;
  dist.probabilities.assign(ds.n(), 0.0);
  for (const auto& c : candidates) dist.probabilities[c.item] = c.weight / total;
  return dist;
}

/// (1 - epsilon) * kernel + epsilon * Uniform(n); Uniform(n) for a dead end.
inline TransitionDistribution mix_epsilon(const std::optional<TransitionDistribution>& kernel, double epsilon,
                                          std::size_t n) {
  detail::require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must be in [0, 1]");
  detail::require(n >= 1, "item count must be >= 1");
  const double uniform = 1.0 / static_cast<double>(n);
  TransitionDistribution mixed;
  if (!kernel) {
    mixed.probabilities.assign(n, uniform);
    return mixed;
  }
  detail::require(kernel->probabilities.size() == n, "kernel size does not match item count");
  mixed.probabilities.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    mixed.probabilities[j] = (1.0 - epsilon) * kernel->probabilities[j] + epsilon * uniform;
  }
  return mixed;
}

inline TransitionDistribution transition_distribution(const DsMatrix& ds, const CvsMatrix& cvs,
                                                      std::span<const ItemId> history, std::size_t memory,
                                                      double epsilon) {
  return mix_epsilon(mbrw_kernel(ds, cvs, history, memory), epsilon, ds.n());
}

/// Samples the next item of a walk from the mixed transition distribution.
inline ItemId sample_next_item(const DsMatrix& ds, const CvsMatrix& cvs, std::span<const ItemId> history,
                               std::size_t memory, double epsilon, Rng& rng, GenerationStats* stats = nullptr) {
  detail::check_dimensions(ds, cvs);
  detail::require(!history.empty(), "history must be nonempty");
  std::vector<Candidate> scratch;
  GenerationStats local;
  const ItemId next = detail::next_item(ds, cvs, history, memory, epsilon, rng, scratch, local);
  if (stats != nullptr) *stats += local;
  return next;
}

namespace detail {

inline Clickstream walk(const DsMatrix& ds, const CvsMatrix& cvs, const MbrwConfig& config, std::uint64_t walk_seed,
                        std::vector<Candidate>& scratch, GenerationStats& stats) {
  Rng rng(walk_seed);
  WalkState state;
  state.memory = config.memory.sample(rng);
  const std::size_t length = config.length.sample(rng);
  if (state.memory == 0) ++stats.zero_memory_walks;
  state.history.reserve(length);
  state.history.push_back(config.start.sample(rng, ds.n()));
  // length - 1 hops, so the sampled length is the emitted length.
  while (state.history.size() < length) {
    state.history.push_back(next_item(ds, cvs, state.history, state.memory, config.epsilon, rng, scratch, stats));
  }
  return std::move(state.history);
}

}  // namespace detail

/// One synthetic clickstream; a pure function of its arguments.
inline Clickstream generate_clickstream(const DsMatrix& ds, const CvsMatrix& cvs, const MbrwConfig& config,
                                        std::uint64_t walk_seed, GenerationStats* stats = nullptr) {
  detail::check_dimensions(ds, cvs);
  config.validate(ds.n());
  std::vector<Candidate> scratch;
  GenerationStats local;
  Clickstream stream = detail::walk(ds, cvs, config, walk_seed, scratch, local);
  if (stats != nullptr) *stats += local;
  return stream;
}

/// Seed of stream `index` of a generated set.
inline std::uint64_t stream_seed(std::uint64_t config_seed, std::size_t index) {
  return split_seed(config_seed, index);
}

/// K = config.stream_count synthetic clickstreams. Stream i uses
/// stream_seed(config.seed, i), so output does not depend on `workers`.
inline ClickstreamSet generate_set(const DsMatrix& ds, const CvsMatrix& cvs, const MbrwConfig& config,
                                   std::shared_ptr<const Vocabulary> vocab, std::size_t workers = 1,
                                   GenerationStats* stats = nullptr) {
  detail::check_dimensions(ds, cvs);
  detail::require(vocab != nullptr && vocab->size() == ds.n(), "vocabulary size does not match the matrices");
  config.validate(ds.n());
  const std::size_t count = config.stream_count;
  workers = std::clamp<std::size_t>(workers, 1, count);

  std::vector<Clickstream> streams(count);
  std::vector<GenerationStats> per_worker(workers);
  auto run = [&](std::size_t worker) {
    std::vector<Candidate> scratch;
    for (std::size_t i = worker; i < count; i += workers) {
      streams[i] = detail::walk(ds, cvs, config, stream_seed(config.seed, i), scratch, per_worker[worker]);
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  if (stats != nullptr) {
    for (const auto& s : per_worker) *stats += s;
  }
  return ClickstreamSet(std::move(vocab), std::move(streams));
}

}  // namespace seqsynth

#pragma once

// Utility evaluation: an item-based kNN recommender, ranking metrics, and
// the k-fold Real / Syn / Rnd experiment.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "seqsynth/corpus.hpp"
#include "seqsynth/detail/text.hpp"
#include "seqsynth/error.hpp"
#include "seqsynth/generator.hpp"
#include "seqsynth/seqgraph.hpp"

namespace seqsynth {

using ItemSet = std::unordered_set<ItemId>;

/// Binary implicit feedback: one user per clickstream, holding its distinct items.
struct UserItemMatrix {
  std::size_t item_count = 0;
  std::vector<std::vector<ItemId>> users;  // sorted, distinct

  static UserItemMatrix from_clickstreams(const ClickstreamSet& set) {
    UserItemMatrix m;
    m.item_count = set.item_count();
    m.users.reserve(set.size());
    for (const auto& stream : set.streams()) {
      std::vector<ItemId> items(stream.begin(), stream.end());
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      m.users.push_back(std::move(items));
    }
    return m;
  }

  /// Users of each item.
  std::vector<std::vector<std::uint32_t>> item_users() const {
    std::vector<std::vector<std::uint32_t>> out(item_count);
    for (std::size_t u = 0; u < users.size(); ++u) {
      for (ItemId i : users[u]) out[i].push_back(static_cast<std::uint32_t>(u));
    }
    return out;
  }
};

struct Neighbor {
  ItemId item;
  double similarity;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct ItemKnnModel {
  std::size_t k = 0;
  std::vector<std::vector<Neighbor>> neighbors;  // similarity descending, then item ascending

  std::size_t item_count() const { return neighbors.size(); }

  /// Similarity as retained by the model; 0 for pruned or absent pairs.
  double similarity(ItemId a, ItemId b) const {
    if (a >= neighbors.size()) return 0.0;
    for (const auto& nb : neighbors[a]) {
      if (nb.item == b) return nb.similarity;
    }
    return 0.0;
  }

  friend bool operator==(const ItemKnnModel&, const ItemKnnModel&) = default;
};

/// Cosine similarity over user sets, |U_i & U_j| / sqrt(|U_i| |U_j|); keeps the
/// k most similar items per item.
inline ItemKnnModel train_item_knn(const ClickstreamSet& train, std::size_t k) {
  detail::require(!train.empty(), "cannot train on an empty set");
  detail::require(k >= 1, "k must be >= 1");
  const auto uim = UserItemMatrix::from_clickstreams(train);
  const auto item_users = uim.item_users();
  const std::size_t n = uim.item_count;

  ItemKnnModel model;
  model.k = k;
  model.neighbors.resize(n);
  std::vector<std::uint32_t> co(n, 0);
  std::vector<ItemId> touched;
  std::vector<Neighbor> candidates;
  for (ItemId i = 0; i < n; ++i) {
    if (item_users[i].empty()) continue;
    touched.clear();
    for (std::uint32_t u : item_users[i]) {
      for (ItemId j : uim.users[u]) {
        if (j == i) continue;
        if (co[j]++ == 0) touched.push_back(j);
      }
    }
    candidates.clear();
    const double size_i = static_cast<double>(item_users[i].size());
    for (ItemId j : touched) {
      const double size_j = static_cast<double>(item_users[j].size());
      candidates.push_back({j, static_cast<double>(co[j]) / std::sqrt(size_i * size_j)});
      co[j] = 0;
    }
    const std::size_t keep = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                        return a.similarity != b.similarity ? a.similarity > b.similarity : a.item < b.item;
                      });
    model.neighbors[i].assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return model;
}

struct ScoredItem {
  ItemId item;
  double score;
};

/// Items ranked by summed similarity to the distinct query items. Query items
/// are never returned; only positive scores; ties go to the lower id.
inline std::vector<ScoredItem> recommend_scored(const ItemKnnModel& model, std::span<const ItemId> query,
                                                std::size_t top_n) {
  detail::require(top_n >= 1, "top_n must be >= 1");
  std::vector<ItemId> q(query.begin(), query.end());
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());

  std::vector<double> score(model.item_count(), 0.0);
  std::vector<ItemId> touched;
  for (ItemId i : q) {
    if (i >= model.item_count()) continue;
    for (const auto& nb : model.neighbors[i]) {
      if (score[nb.item] == 0.0) touched.push_back(nb.item);
      score[nb.item] += nb.similarity;
    }
  }
  std::vector<ScoredItem> ranked;
  for (ItemId j : touched) {
    if (score[j] > 0.0 && !std::binary_search(q.begin(), q.end(), j)) ranked.push_back({j, score[j]});
  }
  const std::size_t keep = std::min(top_n, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const ScoredItem& a, const ScoredItem& b) {
                      return a.score != b.score ? a.score > b.score : a.item < b.item;
                    });
  ranked.resize(keep);
  return ranked;
}

inline std::vector<ItemId> recommend(const ItemKnnModel& model, std::span<const ItemId> query, std::size_t top_n) {
  std::vector<ItemId> out;
  for (const auto& s : recommend_scored(model, query, top_n)) out.push_back(s.item);
  return out;
}

// ---------------------------------------------------------------------------
// Ranking metrics. A recommended item repeated later in the list is not a
// second hit.

/// Sum of precision@p over hit positions p, divided by |relevant|.
inline double average_precision(std::span<const ItemId> recommended, const ItemSet& relevant) {
  detail::require(!relevant.empty(), "average precision needs a nonempty relevant set");
  ItemSet seen;
  double hits = 0.0;
  double sum = 0.0;
  for (std::size_t p = 0; p < recommended.size(); ++p) {
    if (relevant.count(recommended[p]) == 0 || !seen.insert(recommended[p]).second) continue;
    hits += 1.0;
    sum += hits / static_cast<double>(p + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

/// Binary-gain NDCG truncated at `cutoff`.
inline double ndcg(std::span<const ItemId> recommended, const ItemSet& relevant, std::size_t cutoff) {
  detail::require(!relevant.empty(), "ndcg needs a nonempty relevant set");
  detail::require(cutoff >= 1, "ndcg cutoff must be >= 1");
  ItemSet seen;
  double dcg = 0.0;
  const std::size_t depth = std::min(cutoff, recommended.size());
  for (std::size_t p = 0; p < depth; ++p) {
    if (relevant.count(recommended[p]) == 0 || !seen.insert(recommended[p]).second) continue;
    dcg += 1.0 / std::log2(static_cast<double>(p + 2));
  }
  double idcg = 0.0;
  const std::size_t ideal = std::min(relevant.size(), cutoff);
  for (std::size_t p = 0; p < ideal; ++p) idcg += 1.0 / std::log2(static_cast<double>(p + 2));
  return dcg / idcg;
}

/// |top-n & relevant| / n, with n as denominator even for shorter lists.
inline double precision_at(std::span<const ItemId> recommended, const ItemSet& relevant, std::size_t n) {
  detail::require(n >= 1, "precision cutoff must be >= 1");
  ItemSet seen;
  std::size_t hits = 0;
  const std::size_t depth = std::min(n, recommended.size());
  for (std::size_t p = 0; p < depth; ++p) {
    if (relevant.count(recommended[p]) != 0 && seen.insert(recommended[p]).second) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Pluggable recommenders

class Recommender {
 public:
  virtual ~Recommender() = default;
  virtual void train(const ClickstreamSet& train) = 0;
  virtual std::vector<ItemId> recommend(std::span<const ItemId> query, std::size_t top_n) const = 0;
  virtual std::string name() const = 0;
};

class ItemKnnRecommender final : public Recommender {
 public:
  explicit ItemKnnRecommender(std::size_t k) : k_(k) {}

  void train(const ClickstreamSet& train) override { model_ = train_item_knn(train, k_); }

  std::vector<ItemId> recommend(std::span<const ItemId> query, std::size_t top_n) const override {
    return seqsynth::recommend(model_, query, top_n);
  }

  std::string name() const override { return "item_knn(k=" + std::to_string(k_) + ")"; }

  const ItemKnnModel& model() const noexcept { return model_; }

 private:
  std::size_t k_;
  ItemKnnModel model_;
};

using RecommenderFactory = std::function<std::unique_ptr<Recommender>()>;

// ---------------------------------------------------------------------------
// Cross-validation experiment

enum class ModelSource : std::size_t { real = 0, syn = 1, rnd = 2 };
inline constexpr std::array<ModelSource, 3> kModelSources = {ModelSource::real, ModelSource::syn, ModelSource::rnd};

inline std::string_view to_string(ModelSource s) {
  switch (s) {
    case ModelSource::real: return "real";
    case ModelSource::syn: return "syn";
    case ModelSource::rnd: return "rnd";
  }
  return "?";
}

struct RankingMetrics {
  double map = 0.0;
  double ndcg = 0.0;
  double precision = 0.0;

  friend bool operator==(const RankingMetrics&, const RankingMetrics&) = default;
};

struct UtilityConfig {
  std::size_t folds = 10;
  /// Memory, epsilon and seed of the synthetic generator. Per fold, the
  /// stream count becomes |train| and, unless disabled below, lengths and
  /// start items follow the fold's training streams.
  MbrwConfig generator;
  bool empirical_lengths = true;
  bool empirical_start = true;
  double random_epsilon = 1.0;
  CountingMode mode = CountingMode::per_stream;
  std::size_t knn_k = 15;
  double prefix_fraction = 0.5;
  std::size_t list_length = 10;
  std::size_t ndcg_cutoff = 10;
  std::size_t precision_cutoff = 10;
  std::size_t workers = 1;
  /// Defaults to Item-KNN with knn_k neighbors.
  RecommenderFactory recommender;
};

struct FoldResult {
  std::size_t fold = 0;
  std::array<RankingMetrics, 3> metrics{};  // indexed by ModelSource
  std::size_t users = 0;
  std::size_t excluded_streams = 0;
  GenerationStats syn_stats;
  GenerationStats rnd_stats;

  const RankingMetrics& operator[](ModelSource s) const { return metrics[static_cast<std::size_t>(s)]; }
};

struct UtilityReport {
  std::vector<FoldResult> folds;
  std::array<RankingMetrics, 3> mean{};
  std::array<RankingMetrics, 3> stddev{};  // population, across folds
  std::size_t excluded_streams = 0;
  std::string conventions;

  const RankingMetrics& mean_of(ModelSource s) const { return mean[static_cast<std::size_t>(s)]; }
  const RankingMetrics& stddev_of(ModelSource s) const { return stddev[static_cast<std::size_t>(s)]; }
};

/// Everything a fold's models are trained from. Depends only on the fold's
/// training streams and the seed.
struct FoldArtifacts {
  ClickstreamSet train;
  ClickstreamSet test;
  DsMatrix ds;
  CvsMatrix cvs;
  ClickstreamSet syn;
  ClickstreamSet rnd;
  GenerationStats syn_stats;
  GenerationStats rnd_stats;
};

inline std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold) { return split_seed(seed, 0x100000000ULL + fold); }

inline FoldArtifacts prepare_fold(const ClickstreamSet& corpus, const FoldPlan& plan, std::size_t fold,
                                  const UtilityConfig& config, std::size_t generation_workers = 1) {
  auto [train, test] = fold_split(corpus, plan, fold);
  detail::require(!train.empty(), "fold " + std::to_string(fold) + " has no training streams");
  auto ds = build_ds(train, config.mode);
  auto cvs = build_cvs(train, config.mode);

  MbrwConfig syn_config = config.generator;
  syn_config.stream_count = train.size();
  if (config.empirical_lengths) syn_config.length = empirical_length_distribution(train);
  if (config.empirical_start) syn_config.start = empirical_start_distribution(train);
  syn_config.seed = split_seed(fold_seed(config.generator.seed, fold), 0);
  MbrwConfig rnd_config = syn_config;
  rnd_config.epsilon = config.random_epsilon;
  rnd_config.seed = split_seed(fold_seed(config.generator.seed, fold), 1);

  GenerationStats syn_stats;
  GenerationStats rnd_stats;
  auto syn = generate_set(ds, cvs, syn_config, train.shared_vocab(), generation_workers, &syn_stats);
  auto rnd = generate_set(ds, cvs, rnd_config, train.shared_vocab(), generation_workers, &rnd_stats);
  return {std::move(train), std::move(test), std::move(ds), std::move(cvs),
          std::move(syn),   std::move(rnd),  syn_stats,     rnd_stats};
}

/// Mean metrics of `model` over the users of a vertical split.
inline RankingMetrics evaluate_recommender(const Recommender& model, const VerticalSplit& split,
                                           const UtilityConfig& config) {
  RankingMetrics total;
  const std::size_t users = split.query.size();
  detail::require(users > 0, "no users to evaluate");
  for (std::size_t u = 0; u < users; ++u) {
    const auto& holdout = split.holdout[u];
    const ItemSet relevant(holdout.begin(), holdout.end());
    const auto recs = model.recommend(split.query[u], config.list_length);
    total.map += average_precision(recs, relevant);
    total.ndcg += ndcg(recs, relevant, config.ndcg_cutoff);
    total.precision += precision_at(recs, relevant, config.precision_cutoff);
  }
  const double n = static_cast<double>(users);
  return {total.map / n, total.ndcg / n, total.precision / n};
}

inline std::string utility_conventions(const UtilityConfig& config) {
  return "similarity=cosine knn_k=" + std::to_string(config.knn_k) +
         " list_length=" + std::to_string(config.list_length) + " map_normalizer=|relevant|" +
         " ndcg_cutoff=" + std::to_string(config.ndcg_cutoff) + " ndcg_gain=binary" +
         " precision_cutoff=" + std::to_string(config.precision_cutoff) +
         " relevance=distinct_holdout_items prefix_fraction=" + detail::format_double(config.prefix_fraction) +
         " counting_mode=" + std::string(to_string(config.mode));
}

inline FoldResult run_fold(const ClickstreamSet& corpus, const FoldPlan& plan, std::size_t fold,
                           const UtilityConfig& config) {
  FoldArtifacts art = prepare_fold(corpus, plan, fold, config);

  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < art.test.size(); ++i) {
    if (art.test[i].size() >= 2) eligible.push_back(i);
  }
  FoldResult result;
  result.fold = fold;
  result.excluded_streams = art.test.size() - eligible.size();
  detail::require(!eligible.empty(), "fold " + std::to_string(fold) + " has no test streams of length >= 2");
  const auto split = vertical_split(art.test.subset(eligible), config.prefix_fraction);
  result.users = eligible.size();
  result.syn_stats = art.syn_stats;
  result.rnd_stats = art.rnd_stats;

  const ClickstreamSet* sources[3] = {&art.train, &art.syn, &art.rnd};
  for (ModelSource s : kModelSources) {
    std::unique_ptr<Recommender> model = config.recommender
                                             ? config.recommender()
                                             : std::make_unique<ItemKnnRecommender>(config.knn_k);
    model->train(*sources[static_cast<std::size_t>(s)]);
    result.metrics[static_cast<std::size_t>(s)] = evaluate_recommender(*model, split, config);
  }
  return result;
}

/// k-fold Real / Syn / Rnd comparison. Fold i trains on the out-of-fold
/// streams, generates Syn and Rnd sets of the same size from their DS/CVS,
/// and scores the three models on the in-fold streams' prefix/suffix split.
/// Test streams shorter than 2 are excluded and counted.
inline UtilityReport run_utility_experiment(const ClickstreamSet& corpus, const UtilityConfig& config) {
  config.generator.validate(corpus.item_count());
  detail::require(config.prefix_fraction > 0.0 && config.prefix_fraction < 1.0, "prefix fraction must be in (0, 1)");
  detail::require(config.random_epsilon >= 0.0 && config.random_epsilon <= 1.0, "random epsilon must be in [0, 1]");
  const FoldPlan plan = make_folds(corpus, config.folds, config.generator.seed);

  UtilityReport report;
  report.folds.resize(config.folds);
  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, config.folds);
  auto run = [&](std::size_t worker) {
    for (std::size_t f = worker; f < config.folds; f += workers) report.folds[f] = run_fold(corpus, plan, f, config);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> threads;
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

  const double n = static_cast<double>(config.folds);
  for (std::size_t s = 0; s < 3; ++s) {
    RankingMetrics sum;
    for (const auto& f : report.folds) {
      sum.map += f.metrics[s].map;
      sum.ndcg += f.metrics[s].ndcg;
      sum.precision += f.metrics[s].precision;
    }
    const RankingMetrics mean{sum.map / n, sum.ndcg / n, sum.precision / n};
    RankingMetrics var;
    for (const auto& f : report.folds) {
      var.map += (f.metrics[s].map - mean.map) * (f.metrics[s].map - mean.map);
      var.ndcg += (f.metrics[s].ndcg - mean.ndcg) * (f.metrics[s].ndcg - mean.ndcg);
      var.precision += (f.metrics[s].precision - mean.precision) * (f.metrics[s].precision - mean.precision);
    }
    report.mean[s] = mean;
    report.stddev[s] = {std::sqrt(var.map / n), std::sqrt(var.ndcg / n), std::sqrt(var.precision / n)};
  }
  for (const auto& f : report.folds) report.excluded_streams += f.excluded_streams;
  report.conventions = utility_conventions(config);
  return report;
}

/// TSV with one line per (fold, model), then a commented summary block.
inline void write_utility_report(const UtilityReport& report, std::ostream& out) {
  using detail::format_sig6;
  out << "fold\tmodel\tmap\tndcg\tp10\n";
  for (const auto& f : report.folds) {
    for (ModelSource s : kModelSources) {
      const auto& m = f[s];
      out << f.fold << '\t' << to_string(s) << '\t' << format_sig6(m.map) << '\t' << format_sig6(m.ndcg) << '\t'
          << format_sig6(m.precision) << '\n';
    }
  }
  out << "# summary (mean +- population std across folds)\n";
  for (ModelSource s : kModelSources) {
    const auto& mean = report.mean_of(s);
    const auto& sd = report.stddev_of(s);
    out << "# " << to_string(s) << " map=" << format_sig6(mean.map) << "+-" << format_sig6(sd.map)
        << " ndcg=" << format_sig6(mean.ndcg) << "+-" << format_sig6(sd.ndcg) << " p10=" << format_sig6(mean.precision)
        << "+-" << format_sig6(sd.precision) << '\n';
  }
  out << "# excluded_streams=" << report.excluded_streams << '\n';
  out << "# conventions: " << report.conventions << '\n';
}

inline void save_utility_report(const UtilityReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_utility_report(report, out);
  detail::finish_output(out, path);
}

}  // namespace seqsynth

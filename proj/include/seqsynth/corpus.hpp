#pragma once

// Clickstream corpora: vocabulary, streams, length/start statistics, and the
// horizontal, vertical and k-fold splits used by the evaluation harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "seqsynth/detail/text.hpp"
#include "seqsynth/error.hpp"
#include "seqsynth/random.hpp"

namespace seqsynth {

using ItemId = std::uint32_t;

/// Bijection between item labels and dense ids in [0, size()).
class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> labels) {
    for (auto& label : labels) add(std::move(label));
  }

  /// Appends a new label and returns its id. Duplicates are an error.
  ItemId add(std::string label) {
    detail::require(is_valid_label(label), "invalid item label '" + label + "'");
    const auto id = static_cast<ItemId>(labels_.size());
    const auto [it, inserted] = index_.emplace(label, id);
    detail::require(inserted, "duplicate item label '" + label + "'");
    labels_.push_back(std::move(label));
    return id;
  }

  /// Id of `label`, adding it when unseen.
  ItemId intern(std::string_view label) {
    if (const auto id = find(label)) return *id;
    return add(std::string(label));
  }

  std::optional<ItemId> find(std::string_view label) const {
    const auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& label(ItemId id) const {
    detail::require(id < labels_.size(), "item id out of range");
    return labels_[id];
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Labels "0", "1", ... for matrices that come without a vocabulary.
  static Vocabulary numbered(std::size_t n) {
    Vocabulary v;
    for (std::size_t i = 0; i < n; ++i) v.add(std::to_string(i));
    return v;
  }

  static bool is_valid_label(std::string_view label) {
    if (label.empty()) return false;
    return std::none_of(label.begin(), label.end(), [](char c) {
      return detail::is_space(c) || c == '\0';
    });
  }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ItemId> index_;
};

using Clickstream = std::vector<ItemId>;

/// An ordered collection of clickstreams sharing one vocabulary.
class ClickstreamSet {
 public:
  ClickstreamSet() : vocab_(std::make_shared<const Vocabulary>()) {}

  ClickstreamSet(std::shared_ptr<const Vocabulary> vocab, std::vector<Clickstream> streams)
      : vocab_(std::move(vocab)), streams_(std::move(streams)) {
    detail::require(vocab_ != nullptr, "clickstream set needs a vocabulary");
    const std::size_t n = vocab_->size();
    for (std::size_t i = 0; i < streams_.size(); ++i) {
      detail::require(!streams_[i].empty(), "clickstream " + std::to_string(i) + " is empty");
      for (ItemId id : streams_[i]) {
        detail::require(id < n, "clickstream " + std::to_string(i) + " has item id out of range");
      }
    }
  }

  const Vocabulary& vocab() const noexcept { return *vocab_; }
  const std::shared_ptr<const Vocabulary>& shared_vocab() const noexcept { return vocab_; }
  std::size_t item_count() const noexcept { return vocab_->size(); }

  std::span<const Clickstream> streams() const noexcept { return streams_; }
  std::size_t size() const noexcept { return streams_.size(); }
  bool empty() const noexcept { return streams_.empty(); }
  const Clickstream& operator[](std::size_t i) const { return streams_[i]; }

  std::size_t total_items() const {
    std::size_t total = 0;
    for (const auto& s : streams_) total += s.size();
    return total;
  }

  /// Streams at `indices`, in the given order.
  ClickstreamSet subset(std::span<const std::size_t> indices) const {
    std::vector<Clickstream> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) picked.push_back(streams_.at(i));
    return ClickstreamSet(vocab_, std::move(picked));
  }

  friend bool operator==(const ClickstreamSet& a, const ClickstreamSet& b) {
    return a.streams_ == b.streams_ && (a.vocab_ == b.vocab_ || *a.vocab_ == *b.vocab_);
  }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
  std::vector<Clickstream> streams_;
};

// ---------------------------------------------------------------------------
// File formats

namespace detail {

inline void parse_stream_line(std::string_view line, const std::string& source, std::size_t line_no,
                              const std::function<ItemId(std::string_view)>& resolve, Clickstream& out) {
  for (std::string_view token : split(line, ' ')) {
    if (token.empty()) throw FormatError(source, line_no, "empty label (labels must be separated by single spaces)");
    if (!Vocabulary::is_valid_label(token)) throw FormatError(source, line_no, "label contains whitespace");
    out.push_back(resolve(token));
  }
}

inline ClickstreamSet read_streams(std::istream& in, const std::string& source, Vocabulary* grow,
                                   std::shared_ptr<const Vocabulary> fixed) {
  std::vector<Clickstream> streams;
  std::string raw;
  std::size_t line_no = 0;
  const std::function<ItemId(std::string_view)> resolve = [&](std::string_view label) -> ItemId {
    if (grow != nullptr) return grow->intern(label);
    const auto id = fixed->find(label);
    if (!id) throw FormatError(source, line_no, "label '" + std::string(label) + "' not in vocabulary");
    return *id;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = chomp(raw);
    if (is_blank(line) || line.front() == '#') continue;
    Clickstream stream;
    parse_stream_line(line, source, line_no, resolve, stream);
    streams.push_back(std::move(stream));
  }
  if (in.bad()) throw IoError("read failed: " + source);
  if (streams.empty()) throw FormatError(source, 0, "no clickstreams");
  if (grow != nullptr) fixed = std::make_shared<const Vocabulary>(std::move(*grow));
  return ClickstreamSet(std::move(fixed), std::move(streams));
}

}  // namespace detail

/// Parses the one-stream-per-line format, building the vocabulary from
/// first-occurrence order.
inline ClickstreamSet read_clickstreams(std::istream& in, const std::string& source = "<stream>") {
  Vocabulary vocab;
  return detail::read_streams(in, source, &vocab, nullptr);
}

/// Parses against a fixed vocabulary; unknown labels are an error.
inline ClickstreamSet read_clickstreams(std::istream& in, std::shared_ptr<const Vocabulary> vocab,
                                        const std::string& source = "<stream>") {
  detail::require(vocab != nullptr, "null vocabulary");
  return detail::read_streams(in, source, nullptr, std::move(vocab));
}

inline ClickstreamSet load_clickstreams(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_clickstreams(in, path.string());
}

inline ClickstreamSet load_clickstreams(const std::filesystem::path& path, std::shared_ptr<const Vocabulary> vocab) {
  auto in = detail::open_input(path);
  return read_clickstreams(in, std::move(vocab), path.string());
}

inline void write_clickstreams(const ClickstreamSet& set, std::ostream& out) {
  const Vocabulary& vocab = set.vocab();
  for (const auto& stream : set.streams()) {
    for (std::size_t i = 0; i < stream.size(); ++i) {
      if (i > 0) out << ' ';
      out << vocab.label(stream[i]);
    }
    out << '\n';
  }
}

inline void save_clickstreams(const ClickstreamSet& set, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_clickstreams(set, out);
  detail::finish_output(out, path);
}

inline void write_vocabulary(const Vocabulary& vocab, std::ostream& out) {
  for (const auto& label : vocab.labels()) out << label << '\n';
}

inline Vocabulary read_vocabulary(std::istream& in, const std::string& source = "<stream>") {
  Vocabulary vocab;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::chomp(raw);
    if (!Vocabulary::is_valid_label(line)) throw FormatError(source, line_no, "invalid vocabulary label");
    if (vocab.find(line)) throw FormatError(source, line_no, "duplicate vocabulary label");
    vocab.add(std::string(line));
  }
  if (vocab.size() == 0) throw FormatError(source, 0, "empty vocabulary");
  return vocab;
}

inline void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_vocabulary(vocab, out);
  detail::finish_output(out, path);
}

inline Vocabulary load_vocabulary(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_vocabulary(in, path.string());
}

// ---------------------------------------------------------------------------
// Length and start distributions

/// Distribution of clickstream lengths. Every sample is clamped to >= 1.
///
/// Geometric(p) counts trials up to and including the first success, so its
/// support starts at 1 and its mean is 1/p. Poisson, negative binomial and
/// rounded Gaussian draws are clamped to 1 from below.
class LengthDistribution {
 public:
  struct Constant {
    std::size_t length;
  };
  struct Geometric {
    double p;
  };
  struct Poisson {
    double mean;
  };
  struct NegativeBinomial {
    std::size_t successes;
    double p;
  };
  struct RoundedGaussian {
    double mean;
    double stddev;
  };
  struct Empirical {
    std::vector<std::size_t> lengths;  // ascending, distinct
    std::vector<double> probabilities;
    AliasTable table;
  };
  using Kind = std::variant<Constant, Geometric, Poisson, NegativeBinomial, RoundedGaussian, Empirical>;

  static LengthDistribution constant(std::size_t length) {
    detail::require(length >= 1, "constant length must be >= 1");
    return LengthDistribution(Constant{length});
  }
  static LengthDistribution geometric(double p) {
    detail::require(p > 0.0 && p <= 1.0, "geometric p must be in (0, 1]");
    return LengthDistribution(Geometric{p});
  }
  static LengthDistribution poisson(double mean) {
    detail::require(mean > 0.0 && std::isfinite(mean), "poisson mean must be positive");
    return LengthDistribution(Poisson{mean});
  }
  static LengthDistribution negative_binomial(std::size_t successes, double p) {
    detail::require(successes >= 1, "negative binomial r must be >= 1");
    detail::require(p > 0.0 && p <= 1.0, "negative binomial p must be in (0, 1]");
    return LengthDistribution(NegativeBinomial{successes, p});
  }
  static LengthDistribution rounded_gaussian(double mean, double stddev) {
    detail::require(std::isfinite(mean) && stddev >= 0.0 && std::isfinite(stddev),
                    "gaussian needs finite mean and nonnegative stddev");
    return LengthDistribution(RoundedGaussian{mean, stddev});
  }

  /// Histogram of observed lengths.
  static LengthDistribution empirical(std::span<const std::size_t> observed) {
    detail::require(!observed.empty(), "empirical length distribution needs observations");
    std::map<std::size_t, std::size_t> histogram;
    for (std::size_t len : observed) {
      detail::require(len >= 1, "observed lengths must be >= 1");
      ++histogram[len];
    }
    Empirical e;
    for (const auto& [len, count] : histogram) {
      e.lengths.push_back(len);
      e.probabilities.push_back(static_cast<double>(count) / static_cast<double>(observed.size()));
    }
    e.table = AliasTable(e.probabilities);
    return LengthDistribution(std::move(e));
  }

  /// Parses "constant:L", "geometric:p", "poisson:lambda", "negbin:r,p" or
  /// "gaussian:mean,stddev".
  static LengthDistribution parse(std::string_view spec) {
    const auto colon = spec.find(':');
    detail::require(colon != std::string_view::npos, "length distribution must look like kind:params");
    const std::string_view kind = spec.substr(0, colon);
    const auto params = detail::split(spec.substr(colon + 1), ',');
    auto real = [&](std::size_t i) {
      const auto v = i < params.size() ? detail::parse_number<double>(params[i]) : std::nullopt;
      detail::require(v.has_value(), "bad parameter in length distribution '" + std::string(spec) + "'");
      return *v;
    };
    auto integer = [&](std::size_t i) {
      const auto v = i < params.size() ? detail::parse_number<std::size_t>(params[i]) : std::nullopt;
      detail::require(v.has_value(), "bad parameter in length distribution '" + std::string(spec) + "'");
      return *v;
    };
    auto arity = [&](std::size_t n) {
      detail::require(params.size() == n, "wrong parameter count in length distribution '" + std::string(spec) + "'");
    };
    if (kind == "constant") {
      arity(1);
      return constant(integer(0));
    }
    if (kind == "geometric") {
      arity(1);
      return geometric(real(0));
    }
    if (kind == "poisson") {
      arity(1);
      return poisson(real(0));
    }
    if (kind == "negbin") {
      arity(2);
      return negative_binomial(integer(0), real(1));
    }
    if (kind == "gaussian") {
      arity(2);
      return rounded_gaussian(real(0), real(1));
    }
    throw InvalidArgument("unknown length distribution kind '" + std::string(kind) + "'");
  }

  std::size_t sample(Rng& rng) const {
    return std::visit([&](const auto& d) { return draw(d, rng); }, kind_);
  }

  const Kind& kind() const noexcept { return kind_; }

  bool is_empirical() const noexcept { return std::holds_alternative<Empirical>(kind_); }

  /// Text form accepted by parse(); empirical distributions print their histogram.
  std::string describe() const {
    using detail::format_double;
    struct Visitor {
      std::string operator()(const Constant& d) const { return "constant:" + std::to_string(d.length); }
      std::string operator()(const Geometric& d) const { return "geometric:" + format_double(d.p); }
      std::string operator()(const Poisson& d) const { return "poisson:" + format_double(d.mean); }
      std::string operator()(const NegativeBinomial& d) const {
        return "negbin:" + std::to_string(d.successes) + "," + format_double(d.p);
      }
      std::string operator()(const RoundedGaussian& d) const {
        return "gaussian:" + format_double(d.mean) + "," + format_double(d.stddev);
      }
      std::string operator()(const Empirical& d) const {
        std::string s = "empirical:";
        for (std::size_t i = 0; i < d.lengths.size(); ++i) {
          if (i > 0) s += ',';
          s += std::to_string(d.lengths[i]) + "=" + format_double(d.probabilities[i]);
        }
        return s;
      }
    };
    return std::visit(Visitor{}, kind_);
  }

 private:
  explicit LengthDistribution(Kind kind) : kind_(std::move(kind)) {}

  static std::size_t clamp_to_one(long long v) { return v < 1 ? 1 : static_cast<std::size_t>(v); }

  static std::size_t draw(const Constant& d, Rng&) { return d.length; }
  static std::size_t draw(const Geometric& d, Rng& rng) {
    return 1 + static_cast<std::size_t>(std::geometric_distribution<long long>(d.p)(rng));
  }
  static std::size_t draw(const Poisson& d, Rng& rng) {
    return clamp_to_one(std::poisson_distribution<long long>(d.mean)(rng));
  }
  static std::size_t draw(const NegativeBinomial& d, Rng& rng) {
    return clamp_to_one(
        std::negative_binomial_distribution<long long>(static_cast<long long>(d.successes), d.p)(rng));
  }
  static std::size_t draw(const RoundedGaussian& d, Rng& rng) {
    const double x = std::normal_distribution<double>(d.mean, d.stddev)(rng);
    return x < 1.0 ? 1 : static_cast<std::size_t>(std::llround(x));
  }
  static std::size_t draw(const Empirical& d, Rng& rng) { return d.lengths[d.table.sample(rng)]; }

  Kind kind_;
};

/// Distribution of the first item of a walk: uniform, or explicit weights.
class StartDistribution {
 public:
  static StartDistribution uniform() { return StartDistribution(); }

  static StartDistribution point(ItemId item, std::size_t n) {
    detail::require(item < n, "start item out of range");
    std::vector<double> w(n, 0.0);
    w[item] = 1.0;
    return from_weights(std::move(w));
  }

  /// Normalizes `weights` to sum to 1.
  static StartDistribution from_weights(std::vector<double> weights) {
    detail::require(!weights.empty(), "start weights must be nonempty");
    double total = 0.0;
    for (double w : weights) {
      detail::require(w >= 0.0 && std::isfinite(w), "start weights must be finite and nonnegative");
      total += w;
    }
    detail::require(total > 0.0, "start weights must have positive mass");
    for (double& w : weights) w /= total;
    StartDistribution d;
    d.table_ = AliasTable(weights);
    d.weights_ = std::move(weights);
    return d;
  }

  bool is_uniform() const noexcept { return weights_.empty(); }
  std::span<const double> weights() const noexcept { return weights_; }

  double probability(ItemId item, std::size_t n) const {
    if (item >= n) return 0.0;
    return is_uniform() ? 1.0 / static_cast<double>(n) : weights_.at(item);
  }

  ItemId sample(Rng& rng, std::size_t n) const {
    detail::require(n > 0, "cannot sample a start item from an empty vocabulary");
    if (is_uniform()) return static_cast<ItemId>(uniform_index(rng, n));
    detail::require(weights_.size() == n, "start distribution size does not match item count");
    return static_cast<ItemId>(table_.sample(rng));
  }

  std::string describe() const {
    if (is_uniform()) return "uniform";
    std::size_t support = 0;
    for (double w : weights_) support += w > 0.0 ? 1 : 0;
    return "weights(support=" + std::to_string(support) + ")";
  }

 private:
  StartDistribution() = default;

  std::vector<double> weights_;
  AliasTable table_;
};

inline LengthDistribution empirical_length_distribution(const ClickstreamSet& set) {
  detail::require(!set.empty(), "empirical length distribution of an empty set");
  std::vector<std::size_t> lengths;
  lengths.reserve(set.size());
  for (const auto& s : set.streams()) lengths.push_back(s.size());
  return LengthDistribution::empirical(lengths);
}

/// Weight of each item = fraction of streams starting with it.
inline StartDistribution empirical_start_distribution(const ClickstreamSet& set) {
  detail::require(!set.empty(), "empirical start distribution of an empty set");
  std::vector<double> counts(set.item_count(), 0.0);
  for (const auto& s : set.streams()) counts[s.front()] += 1.0;
  return StartDistribution::from_weights(std::move(counts));
}

// ---------------------------------------------------------------------------
// Splits

namespace detail {

inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  // Fisher-Yates with our own bounded draw; std::shuffle's draws are
  // implementation-defined.
  for (std::size_t i = n; i > 1; --i) {
    std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
  }
  return idx;
}

}  // namespace detail

struct HorizontalSplit {
  ClickstreamSet train;
  ClickstreamSet test;
};

/// Random disjoint train/test partition with |test| = round(test_fraction * |set|).
/// Both outputs keep the input's relative order.
inline HorizontalSplit horizontal_split(const ClickstreamSet& set, double test_fraction, std::uint64_t seed) {
  detail::require(!set.empty(), "cannot split an empty set");
  detail::require(test_fraction > 0.0 && test_fraction < 1.0, "test fraction must be in (0, 1)");
  const auto test_size = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(set.size())));
  detail::require(test_size > 0 && test_size < set.size(), "test fraction leaves train or test empty");

  const auto order = detail::shuffled_indices(set.size(), seed);
  std::vector<bool> in_test(set.size(), false);
  for (std::size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < set.size(); ++i) (in_test[i] ? test_idx : train_idx).push_back(i);
  return {set.subset(train_idx), set.subset(test_idx)};
}

struct VerticalSplit {
  ClickstreamSet query;
  ClickstreamSet holdout;
};

/// Number of leading items that go to the query piece of a length-`n` stream.
inline std::size_t prefix_length(std::size_t n, double prefix_fraction) {
  const auto floor_len = static_cast<std::size_t>(std::floor(prefix_fraction * static_cast<double>(n)));
  return std::clamp<std::size_t>(floor_len, 1, n - 1);
}

/// Cuts every stream into a nonempty prefix (query) and nonempty suffix (holdout).
inline VerticalSplit vertical_split(const ClickstreamSet& set, double prefix_fraction) {
  detail::require(prefix_fraction > 0.0 && prefix_fraction < 1.0, "prefix fraction must be in (0, 1)");
  std::vector<Clickstream> query;
  std::vector<Clickstream> holdout;
  query.reserve(set.size());
  holdout.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& s = set[i];
    detail::require(s.size() >= 2, "vertical split needs streams of length >= 2 (stream " + std::to_string(i) + ")");
    const std::size_t cut = prefix_length(s.size(), prefix_fraction);
    query.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(cut));
    holdout.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(cut), s.end());
  }
  return {ClickstreamSet(set.shared_vocab(), std::move(query)), ClickstreamSet(set.shared_vocab(), std::move(holdout))};
}

/// Balanced assignment of stream indices to folds.
struct FoldPlan {
  std::size_t fold_count = 0;
  std::vector<std::uint32_t> assignment;  // stream index -> fold id
  std::uint64_t seed = 0;

  std::vector<std::size_t> fold_sizes() const {
    std::vector<std::size_t> sizes(fold_count, 0);
    for (auto f : assignment) ++sizes.at(f);
    return sizes;
  }

  friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

inline FoldPlan make_folds(const ClickstreamSet& set, std::size_t fold_count, std::uint64_t seed) {
  detail::require(fold_count >= 2, "fold count must be >= 2");
  detail::require(fold_count <= set.size(), "fold count exceeds number of streams");
  FoldPlan plan;
  plan.fold_count = fold_count;
  plan.seed = seed;
  plan.assignment.assign(set.size(), 0);
  const auto order = detail::shuffled_indices(set.size(), seed);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    plan.assignment[order[pos]] = static_cast<std::uint32_t>(pos % fold_count);
  }
  return plan;
}

/// Out-of-fold streams as train, in-fold streams as test.
inline HorizontalSplit fold_split(const ClickstreamSet& set, const FoldPlan& plan, std::size_t fold) {
  detail::require(plan.assignment.size() == set.size(), "fold plan does not match the set");
  detail::require(fold < plan.fold_count, "fold id out of range");
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (std::size_t i = 0; i < set.size(); ++i) (plan.assignment[i] == fold ? test_idx : train_idx).push_back(i);
  return {set.subset(train_idx), set.subset(test_idx)};
}

inline void write_fold_plan(const FoldPlan& plan, std::ostream& out) {
  for (std::size_t i = 0; i < plan.assignment.size(); ++i) out << i << '\t' << plan.assignment[i] << '\n';
}

inline FoldPlan read_fold_plan(std::istream& in, const std::string& source = "<stream>") {
  FoldPlan plan;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::chomp(raw);
    if (detail::is_blank(line) || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2) throw FormatError(source, line_no, "expected stream_index<TAB>fold_id");
    const auto index = detail::parse_number<std::size_t>(fields[0]);
    const auto fold = detail::parse_number<std::uint32_t>(fields[1]);
    if (!index || !fold) throw FormatError(source, line_no, "non-numeric field");
    if (*index != plan.assignment.size()) throw FormatError(source, line_no, "stream indices must be consecutive from 0");
    plan.assignment.push_back(*fold);
    plan.fold_count = std::max<std::size_t>(plan.fold_count, *fold + 1);
  }
  if (plan.assignment.empty()) throw FormatError(source, 0, "empty fold plan");
  return plan;
}

inline void save_fold_plan(const FoldPlan& plan, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_fold_plan(plan, out);
  detail::finish_output(out, path);
}

inline FoldPlan load_fold_plan(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_fold_plan(in, path.string());
}

}  // namespace seqsynth

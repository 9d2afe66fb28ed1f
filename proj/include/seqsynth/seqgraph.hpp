#pragma once

// Direct Sequence (DS) and Common View Score (CVS) count matrices.
//
// Orientation: DS[next, current]. Column c of DS lists the items that follow
// c, so transition normalizers are column sums.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "seqsynth/corpus.hpp"
#include "seqsynth/detail/text.hpp"
#include "seqsynth/error.hpp"

namespace seqsynth {

using Count = std::uint64_t;

struct Triplet {
  ItemId row;
  ItemId col;
  Count count;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// One stored entry of a row or column; `index` is the other coordinate.
struct SparseEntry {
  ItemId index;
  Count count;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Immutable n x n matrix of positive integer counts, stored both by column
/// and by row. No zero is ever stored.
class SparseCountMatrix {
 public:
  SparseCountMatrix() : col_ptr_(1, 0), row_ptr_(1, 0) {}

  /// Builds from triplets. Rejects duplicates, zero counts and indices >= n.
  static SparseCountMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
      detail::require(t.row < n && t.col < n, "triplet index out of range");
      detail::require(t.count > 0, "triplet count must be positive");
    }
    std::sort(triplets.begin(), triplets.end(),
              [](const Triplet& a, const Triplet& b) { return std::pair(a.col, a.row) < std::pair(b.col, b.row); });
    for (std::size_t i = 1; i < triplets.size(); ++i) {
      detail::require(triplets[i].row != triplets[i - 1].row || triplets[i].col != triplets[i - 1].col,
                      "duplicate triplet (" + std::to_string(triplets[i].row) + "," +
                          std::to_string(triplets[i].col) + ")");
    }

    SparseCountMatrix m;
    m.n_ = n;
    m.col_ptr_.assign(n + 1, 0);
    m.row_ptr_.assign(n + 1, 0);
    m.col_sums_.assign(n, 0);
    m.by_col_.reserve(triplets.size());
    for (const auto& t : triplets) {
      ++m.col_ptr_[t.col + 1];
      ++m.row_ptr_[t.row + 1];
      m.col_sums_[t.col] += t.count;
      m.by_col_.push_back({t.row, t.count});
    }
    for (std::size_t i = 0; i < n; ++i) {
      m.col_ptr_[i + 1] += m.col_ptr_[i];
      m.row_ptr_[i + 1] += m.row_ptr_[i];
    }
    // Column-major traversal visits each row's entries in ascending column order.
    m.by_row_.resize(triplets.size());
    std::vector<std::size_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
    for (const auto& t : triplets) m.by_row_[fill[t.row]++] = {t.col, t.count};
    return m;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return by_col_.size(); }

  /// Nonzero entries of column `col`, ascending by row.
  std::span<const SparseEntry> column(ItemId col) const {
    return std::span(by_col_).subspan(col_ptr_[col], col_ptr_[col + 1] - col_ptr_[col]);
  }

  /// Nonzero entries of row `row`, ascending by column.
  std::span<const SparseEntry> row(ItemId row) const {
    return std::span(by_row_).subspan(row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]);
  }

  Count column_sum(ItemId col) const { return col_sums_[col]; }

  Count at(ItemId row, ItemId col) const { return lookup(column(col), row); }

  Count max_count() const {
    Count best = 0;
    for (const auto& e : by_col_) best = std::max(best, e.count);
    return best;
  }

  /// Row-major ordered triplets.
  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for (ItemId r = 0; r < n_; ++r) {
      for (const auto& e : row(r)) out.push_back({r, e.index, e.count});
    }
    return out;
  }

  /// Count of `index` in a sorted entry list, 0 when absent.
  static Count lookup(std::span<const SparseEntry> entries, ItemId index) {
    const auto it = std::lower_bound(entries.begin(), entries.end(), index,
                                     [](const SparseEntry& e, ItemId i) { return e.index < i; });
    return (it != entries.end() && it->index == index) ? it->count : 0;
  }

  friend bool operator==(const SparseCountMatrix& a, const SparseCountMatrix& b) {
    return a.n_ == b.n_ && a.col_ptr_ == b.col_ptr_ && a.by_col_ == b.by_col_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<SparseEntry> by_col_;
  std::vector<std::size_t> row_ptr_;
  std::vector<SparseEntry> by_row_;
  std::vector<Count> col_sums_;
};

enum class CountingMode { per_stream, per_occurrence };
enum class MatrixKind { ds, cvs };

inline std::string_view to_string(CountingMode mode) {
  return mode == CountingMode::per_stream ? "per_stream" : "per_occurrence";
}

inline std::string_view to_string(MatrixKind kind) { return kind == MatrixKind::ds ? "DS" : "CVS"; }

inline CountingMode parse_counting_mode(std::string_view text) {
  if (text == "per_stream") return CountingMode::per_stream;
  if (text == "per_occurrence") return CountingMode::per_occurrence;
  throw InvalidArgument("unknown counting mode '" + std::string(text) + "'");
}

inline MatrixKind parse_matrix_kind(std::string_view text) {
  if (text == "DS") return MatrixKind::ds;
  if (text == "CVS") return MatrixKind::cvs;
  throw InvalidArgument("unknown matrix kind '" + std::string(text) + "'");
}

/// A count matrix tagged with its meaning and counting mode. CVS matrices
/// are checked to be symmetric with a zero diagonal.
template <MatrixKind Kind>
class GeneratorMatrix {
 public:
  static constexpr MatrixKind kind = Kind;

  GeneratorMatrix() = default;

  GeneratorMatrix(SparseCountMatrix counts, CountingMode mode) : counts_(std::move(counts)), mode_(mode) {
    if constexpr (Kind == MatrixKind::cvs) {
      for (ItemId c = 0; c < counts_.n(); ++c) {
        for (const auto& e : counts_.column(c)) {
          detail::require(e.index != c, "CVS diagonal must be zero");
          detail::require(counts_.at(c, e.index) == e.count, "CVS must be symmetric");
        }
      }
    }
  }

  const SparseCountMatrix& counts() const noexcept { return counts_; }
  CountingMode mode() const noexcept { return mode_; }
  std::size_t n() const noexcept { return counts_.n(); }
  Count at(ItemId row, ItemId col) const { return counts_.at(row, col); }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  SparseCountMatrix counts_;
  CountingMode mode_ = CountingMode::per_stream;
};

using DsMatrix = GeneratorMatrix<MatrixKind::ds>;
using CvsMatrix = GeneratorMatrix<MatrixKind::cvs>;

namespace detail {

inline std::uint64_t pair_key(ItemId row, ItemId col) {
  return (static_cast<std::uint64_t>(row) << 32) | col;
}

inline SparseCountMatrix from_accumulator(std::size_t n, const std::unordered_map<std::uint64_t, Count>& acc) {
  std::vector<Triplet> triplets;
  triplets.reserve(acc.size());
  for (const auto& [key, count] : acc) {
    triplets.push_back({static_cast<ItemId>(key >> 32), static_cast<ItemId>(key & 0xffffffffU), count});
  }
  return SparseCountMatrix::from_triplets(n, std::move(triplets));
}

}  // namespace detail

/// DS[m, n]: per_stream counts streams with at least one adjacency n -> m;
/// per_occurrence counts every adjacency.
inline DsMatrix build_ds(const ClickstreamSet& set, CountingMode mode = CountingMode::per_stream) {
  detail::require(!set.empty(), "cannot build DS from an empty set");
  std::unordered_map<std::uint64_t, Count> acc;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& stream : set.streams()) {
    seen.clear();
    for (std::size_t t = 1; t < stream.size(); ++t) {
      const auto key = detail::pair_key(stream[t], stream[t - 1]);
      if (mode == CountingMode::per_stream && !seen.insert(key).second) continue;
      ++acc[key];
    }
  }
  return DsMatrix(detail::from_accumulator(set.item_count(), acc), mode);
}

/// CVS[m, n] for m != n: per_stream adds 1 per stream containing both items;
/// per_occurrence adds occurrences(m) * occurrences(n) per stream.
inline CvsMatrix build_cvs(const ClickstreamSet& set, CountingMode mode = CountingMode::per_stream) {
  detail::require(!set.empty(), "cannot build CVS from an empty set");
  std::unordered_map<std::uint64_t, Count> acc;
  std::vector<std::pair<ItemId, Count>> occurrences;
  for (const auto& stream : set.streams()) {
    Clickstream sorted = stream;
    std::sort(sorted.begin(), sorted.end());
    occurrences.clear();
    for (ItemId id : sorted) {
      if (!occurrences.empty() && occurrences.back().first == id) {
        ++occurrences.back().second;
      } else {
        occurrences.emplace_back(id, 1);
      }
    }
    for (std::size_t i = 0; i < occurrences.size(); ++i) {
      for (std::size_t j = i + 1; j < occurrences.size(); ++j) {
        const auto [a, ca] = occurrences[i];
        const auto [b, cb] = occurrences[j];
        const Count add = mode == CountingMode::per_stream ? 1 : ca * cb;
        acc[detail::pair_key(a, b)] += add;
        acc[detail::pair_key(b, a)] += add;
      }
    }
  }
  return CvsMatrix(detail::from_accumulator(set.item_count(), acc), mode);
}

/// Drops every entry with count < k. k = 1 is the identity.
inline SparseCountMatrix k_anonymity_filter(const SparseCountMatrix& matrix, Count k) {
  detail::require(k >= 1, "k must be >= 1");
  std::vector<Triplet> kept;
  for (const auto& t : matrix.triplets()) {
    if (t.count >= k) kept.push_back(t);
  }
  return SparseCountMatrix::from_triplets(matrix.n(), std::move(kept));
}

template <MatrixKind Kind>
GeneratorMatrix<Kind> k_anonymity_filter(const GeneratorMatrix<Kind>& matrix, Count k) {
  return GeneratorMatrix<Kind>(k_anonymity_filter(matrix.counts(), k), matrix.mode());
}

// ---------------------------------------------------------------------------
// Triplet files
//
//   # kind=DS mode=per_stream n=3
//   row<TAB>col<TAB>count
//   1<TAB>0<TAB>2
//
// CVS files hold the upper triangle only; loading mirrors it.

/// A matrix file's content before it is bound to a kind.
struct MatrixFile {
  MatrixKind kind = MatrixKind::ds;
  CountingMode mode = CountingMode::per_stream;
  SparseCountMatrix counts;
};

inline void write_matrix(const SparseCountMatrix& counts, MatrixKind kind, CountingMode mode, std::ostream& out) {
  out << "# kind=" << to_string(kind) << " mode=" << to_string(mode) << " n=" << counts.n() << '\n';
  out << "row\tcol\tcount\n";
  for (const auto& t : counts.triplets()) {
    if (kind == MatrixKind::cvs && t.row > t.col) continue;
    out << t.row << '\t' << t.col << '\t' << t.count << '\n';
  }
}

template <MatrixKind Kind>
void write_matrix(const GeneratorMatrix<Kind>& matrix, std::ostream& out) {
  write_matrix(matrix.counts(), Kind, matrix.mode(), out);
}

template <MatrixKind Kind>
void save_matrix(const GeneratorMatrix<Kind>& matrix, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_matrix(matrix, out);
  detail::finish_output(out, path);
}

inline MatrixFile read_matrix(std::istream& in, const std::string& source = "<stream>") {
  std::string raw;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, raw)) return false;
    ++line_no;
    return true;
  };

  MatrixFile file;
  if (!next_line()) throw FormatError(source, 0, "empty matrix file");
  std::string_view header = detail::chomp(raw);
  if (header.substr(0, 2) != "# ") throw FormatError(source, line_no, "expected '# kind=... mode=... n=...' header");
  bool have_kind = false, have_mode = false, have_n = false;
  std::size_t n = 0;
  for (std::string_view field : detail::split(header.substr(2), ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw FormatError(source, line_no, "malformed header field");
    const std::string_view key = field.substr(0, eq);
    const std::string_view value = field.substr(eq + 1);
    try {
      if (key == "kind") {
        file.kind = parse_matrix_kind(value);
        have_kind = true;
      } else if (key == "mode") {
        file.mode = parse_counting_mode(value);
        have_mode = true;
      } else if (key == "n") {
        const auto parsed = detail::parse_number<std::size_t>(value);
        if (!parsed) throw InvalidArgument("bad n");
        n = *parsed;
        have_n = true;
      }
    } catch (const InvalidArgument& e) {
      throw FormatError(source, line_no, e.what());
    }
  }
  if (!have_kind || !have_mode || !have_n) throw FormatError(source, line_no, "header needs kind, mode and n");
  if (!next_line() || detail::chomp(raw) != "row\tcol\tcount") {
    throw FormatError(source, line_no, "expected column header 'row<TAB>col<TAB>count'");
  }

  std::vector<Triplet> triplets;
  std::unordered_set<std::uint64_t> seen;
  while (next_line()) {
    const std::string_view line = detail::chomp(raw);
    if (detail::is_blank(line) || line.front() == '#') continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 3) throw FormatError(source, line_no, "expected row<TAB>col<TAB>count");
    const auto row = detail::parse_number<ItemId>(fields[0]);
    const auto col = detail::parse_number<ItemId>(fields[1]);
    const auto count = detail::parse_number<Count>(fields[2]);
    if (!row || !col || !count) throw FormatError(source, line_no, "non-numeric or negative field");
    if (*row >= n || *col >= n) throw FormatError(source, line_no, "index >= n");
    if (*count == 0) throw FormatError(source, line_no, "count must be positive");
    if (file.kind == MatrixKind::cvs && *row == *col) throw FormatError(source, line_no, "CVS diagonal must be zero");
    const ItemId lo = file.kind == MatrixKind::cvs ? std::min(*row, *col) : *row;
    const ItemId hi = file.kind == MatrixKind::cvs ? std::max(*row, *col) : *col;
    if (!seen.insert(detail::pair_key(lo, hi)).second) throw FormatError(source, line_no, "duplicate triplet");
    triplets.push_back({lo, hi, *count});
    if (file.kind == MatrixKind::cvs) triplets.push_back({hi, lo, *count});
  }
  if (in.bad()) throw IoError("read failed: " + source);
  file.counts = SparseCountMatrix::from_triplets(n, std::move(triplets));
  return file;
}

inline MatrixFile load_matrix(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_matrix(in, path.string());
}

template <MatrixKind Kind>
GeneratorMatrix<Kind> load_matrix_as(const std::filesystem::path& path) {
  MatrixFile file = load_matrix(path);
  if (file.kind != Kind) {
    throw FormatError(path.string(), 1, "expected a " + std::string(to_string(Kind)) + " matrix, found " +
                                            std::string(to_string(file.kind)));
  }
  return GeneratorMatrix<Kind>(std::move(file.counts), file.mode);
}

inline DsMatrix load_ds(const std::filesystem::path& path) { return load_matrix_as<MatrixKind::ds>(path); }
inline CvsMatrix load_cvs(const std::filesystem::path& path) { return load_matrix_as<MatrixKind::cvs>(path); }

}  // namespace seqsynth

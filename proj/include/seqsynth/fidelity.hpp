#pragma once

// Row-wise top-z Spearman rank correlation between a real count matrix and
// its synthetic counterpart.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "seqsynth/detail/text.hpp"
#include "seqsynth/error.hpp"
#include "seqsynth/seqgraph.hpp"

namespace seqsynth {

/// 1-based ranks; tied values share the average of the ranks they span.
inline std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

/// Spearman's rho with tie correction (Pearson correlation of average ranks).
/// nullopt when either side is constant, where the coefficient is undefined.
inline std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
  detail::require(xs.size() == ys.size(), "spearman: length mismatch");
  detail::require(xs.size() >= 2, "spearman: need at least two observations");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double mean = 0.5 * static_cast<double>(xs.size() + 1);  // same for both rank vectors
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Columns of the z largest counts in `real_row` (ties to the lower column id),
/// ascending by column.
inline std::vector<ItemId> top_z_columns(std::span<const SparseEntry> real_row, std::size_t z) {
  std::vector<SparseEntry> entries(real_row.begin(), real_row.end());
  const std::size_t keep = std::min(z, entries.size());
  std::partial_sort(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(keep), entries.end(),
                    [](const SparseEntry& a, const SparseEntry& b) {
                      return a.count != b.count ? a.count > b.count : a.index < b.index;
                    });
  std::vector<ItemId> cols;
  cols.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) cols.push_back(entries[i].index);
  std::sort(cols.begin(), cols.end());
  return cols;
}

/// Spearman between the real row and the synthetic row restricted to the real
/// row's top-z columns. nullopt (skipped) when fewer than two columns are
/// selected or either restricted vector is constant.
inline std::optional<double> row_top_z_correlation(std::span<const SparseEntry> real_row,
                                                   std::span<const SparseEntry> syn_row, std::size_t z) {
  detail::require(z >= 2, "z must be >= 2");
  const auto cols = top_z_columns(real_row, z);
  if (cols.size() < 2) return std::nullopt;
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(cols.size());
  ys.reserve(cols.size());
  for (ItemId c : cols) {
    xs.push_back(static_cast<double>(SparseCountMatrix::lookup(real_row, c)));
    ys.push_back(static_cast<double>(SparseCountMatrix::lookup(syn_row, c)));
  }
  return spearman(xs, ys);
}

struct FidelityReport {
  std::size_t z = 0;
  std::vector<std::optional<double>> per_row;  // nullopt = skipped
  double avg = std::numeric_limits<double>::quiet_NaN();
  double stddev = std::numeric_limits<double>::quiet_NaN();
  std::size_t skipped_count = 0;

  std::size_t evaluated_count() const { return per_row.size() - skipped_count; }
};

/// Mean and population standard deviation over non-skipped rows.
inline void aggregate(FidelityReport& report) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& r : report.per_row) {
    if (r) {
      sum += *r;
      ++count;
    }
  }
  report.skipped_count = report.per_row.size() - count;
  if (count == 0) {
    report.avg = report.stddev = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  report.avg = sum / static_cast<double>(count);
  double ss = 0.0;
  for (const auto& r : report.per_row) {
    if (r) ss += (*r - report.avg) * (*r - report.avg);
  }
  report.stddev = std::sqrt(ss / static_cast<double>(count));
}

inline FidelityReport matrix_fidelity(const SparseCountMatrix& real, const SparseCountMatrix& syn, std::size_t z) {
  detail::require(real.n() == syn.n(), "fidelity: matrix dimensions differ");
  detail::require(z >= 2, "z must be >= 2");
  FidelityReport report;
  report.z = z;
  report.per_row.reserve(real.n());
  for (ItemId r = 0; r < real.n(); ++r) report.per_row.push_back(row_top_z_correlation(real.row(r), syn.row(r), z));
  aggregate(report);
  return report;
}

template <MatrixKind Kind>
FidelityReport matrix_fidelity(const GeneratorMatrix<Kind>& real, const GeneratorMatrix<Kind>& syn, std::size_t z) {
  return matrix_fidelity(real.counts(), syn.counts(), z);
}

// Report file:
//   row<TAB>r
//   0<TAB>0.912
//   1<TAB>skipped
//   # z=100, avg=..., std=..., skipped=...

inline void write_fidelity_report(const FidelityReport& report, std::ostream& out) {
  out << "row\tr\n";
  for (std::size_t i = 0; i < report.per_row.size(); ++i) {
    out << i << '\t' << (report.per_row[i] ? detail::format_sig6(*report.per_row[i]) : "skipped") << '\n';
  }
  out << "# z=" << report.z << ", avg=" << detail::format_sig6(report.avg)
      << ", std=" << detail::format_sig6(report.stddev) << ", skipped=" << report.skipped_count << '\n';
}

/// Reads per-row values and z back; avg/std are recomputed from the rows.
inline FidelityReport read_fidelity_report(std::istream& in, const std::string& source = "<stream>") {
  FidelityReport report;
  std::string raw;
  std::size_t line_no = 0;
  if (!std::getline(in, raw) || detail::chomp(raw) != "row\tr") throw FormatError(source, 1, "expected 'row<TAB>r' header");
  ++line_no;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::chomp(raw);
    if (detail::is_blank(line)) continue;
    if (line.front() == '#') {
      const auto pos = line.find("z=");
      if (pos != std::string_view::npos) {
        const auto end = line.find(',', pos);
        const auto z = detail::parse_number<std::size_t>(line.substr(pos + 2, end - pos - 2));
        if (!z) throw FormatError(source, line_no, "bad z in summary");
        report.z = *z;
      }
      continue;
    }
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 2) throw FormatError(source, line_no, "expected row<TAB>r");
    const auto row = detail::parse_number<std::size_t>(fields[0]);
    if (!row || *row != report.per_row.size()) throw FormatError(source, line_no, "rows must be consecutive from 0");
    if (fields[1] == "skipped") {
      report.per_row.emplace_back(std::nullopt);
    } else {
      const auto r = detail::parse_number<double>(fields[1]);
      if (!r) throw FormatError(source, line_no, "bad coefficient");
      report.per_row.emplace_back(*r);
    }
  }
  aggregate(report);
  return report;
}

inline void save_fidelity_report(const FidelityReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_fidelity_report(report, out);
  detail::finish_output(out, path);
}

}  // namespace seqsynth

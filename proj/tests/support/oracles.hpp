#pragma once

// Independent reference implementations used only by tests. They work on
// dense matrices and textbook definitions and share no code path with the
// library beyond its public types.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "seqsynth/seqgraph.hpp"

namespace seqsynth::oracle {

using Dense = std::vector<std::vector<double>>;  // [row][col]

inline Dense dense(const SparseCountMatrix& m) {
  Dense d(m.n(), std::vector<double>(m.n(), 0.0));
  for (const auto& t : m.triplets()) d[t.row][t.col] = static_cast<double>(t.count);
  return d;
}

/// Memory-biased transition probabilities straight from the product formula:
/// P(j) proportional to DS[j][c] * prod_{k=1..w} CVS[j][h[len-1-k]], w = min(m, len-1),
/// mixed with epsilon * uniform; all-zero numerators give uniform.
inline std::vector<double> mbrw_transition(const Dense& ds, const Dense& cvs, const std::vector<std::uint32_t>& history,
                                           std::size_t m, double epsilon) {
  const std::size_t n = ds.size();
  const std::size_t len = history.size();
  const std::uint32_t current = history[len - 1];
  const std::size_t w = m < len - 1 ? m : len - 1;
  std::vector<double> numer(n, 0.0);
  double denom = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double v = ds[j][current];
    for (std::size_t k = 1; k <= w; ++k) v *= cvs[j][history[len - 1 - k]];
    numer[j] = v;
    denom += v;
  }
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double kernel = denom > 0.0 ? numer[j] / denom : 1.0 / static_cast<double>(n);
    p[j] = denom > 0.0 ? (1.0 - epsilon) * kernel + epsilon / static_cast<double>(n) : kernel;
  }
  return p;
}

/// First-order transition from a single start item: DS[j][c] / sum_k DS[k][c].
inline std::vector<double> first_order(const Dense& ds, std::uint32_t current) {
  double col = 0.0;
  for (const auto& row : ds) col += row[current];
  std::vector<double> p(ds.size(), 0.0);
  for (std::size_t j = 0; j < ds.size(); ++j) p[j] = ds[j][current] / col;
  return p;
}

/// Average precision by definition: mean over relevant items of the
/// precision at the rank where each was retrieved (0 if never retrieved).
inline double average_precision(const std::vector<std::uint32_t>& rec, const std::set<std::uint32_t>& relevant) {
  double total = 0.0;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    if (!relevant.count(rec[k])) continue;
    bool first = true;
    for (std::size_t j = 0; j < k; ++j) first = first && rec[j] != rec[k];
    if (!first) continue;
    std::set<std::uint32_t> found;
    for (std::size_t j = 0; j <= k; ++j) {
      if (relevant.count(rec[j])) found.insert(rec[j]);
    }
    total += static_cast<double>(found.size()) / static_cast<double>(k + 1);
  }
  return total / static_cast<double>(relevant.size());
}

inline double ndcg(const std::vector<std::uint32_t>& rec, const std::set<std::uint32_t>& relevant, std::size_t cutoff) {
  double dcg = 0.0;
  std::set<std::uint32_t> seen;
  for (std::size_t k = 0; k < rec.size() && k < cutoff; ++k) {
    if (relevant.count(rec[k]) && seen.insert(rec[k]).second) dcg += std::log(2.0) / std::log(static_cast<double>(k) + 2.0);
  }
  double idcg = 0.0;
  for (std::size_t k = 0; k < relevant.size() && k < cutoff; ++k) idcg += std::log(2.0) / std::log(static_cast<double>(k) + 2.0);
  return dcg / idcg;
}

inline double precision_at(const std::vector<std::uint32_t>& rec, const std::set<std::uint32_t>& relevant, std::size_t n) {
  std::set<std::uint32_t> hits;
  for (std::size_t k = 0; k < rec.size() && k < n; ++k) {
    if (relevant.count(rec[k])) hits.insert(rec[k]);
  }
  return static_cast<double>(hits.size()) / static_cast<double>(n);
}

/// Spearman via the d^2 formula; valid only without ties.
inline double spearman_no_ties(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  auto rank = [&](const std::vector<double>& v, std::size_t i) {
    double r = 1.0;
    for (std::size_t j = 0; j < n; ++j) r += v[j] < v[i] ? 1.0 : 0.0;
    return r;
  };
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = rank(xs, i) - rank(ys, i);
    d2 += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * d2 / (nn * (nn * nn - 1.0));
}

}  // namespace seqsynth::oracle

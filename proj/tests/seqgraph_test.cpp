#include "seqsynth/seqgraph.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace {

using namespace seqsynth;

ClickstreamSet parse(const std::string& text) {
  std::istringstream in(text);
  return read_clickstreams(in);
}

ClickstreamSet random_corpus(std::mt19937_64& gen, std::size_t n, std::size_t streams, std::size_t max_len) {
  std::vector<Clickstream> out(streams);
  for (auto& s : out) {
    s.resize(1 + gen() % max_len);
    for (auto& x : s) x = static_cast<ItemId>(gen() % n);
  }
  return ClickstreamSet(std::make_shared<const Vocabulary>(Vocabulary::numbered(n)), std::move(out));
}

SparseCountMatrix random_matrix(std::mt19937_64& gen, std::size_t n, double density, Count max_count) {
  std::vector<Triplet> t;
  for (ItemId r = 0; r < n; ++r) {
    for (ItemId c = 0; c < n; ++c) {
      if (static_cast<double>(gen() % 1000) < density * 1000) t.push_back({r, c, 1 + gen() % max_count});
    }
  }
  return SparseCountMatrix::from_triplets(n, std::move(t));
}

// a=0, b=1, c=2 in every corpus below (first-occurrence order).

TEST(BuildDs, PerStreamHandCounts) {
  const auto ds = build_ds(parse("a b c\nb c\na b\n"));
  EXPECT_EQ(ds.at(1, 0), 2u);  // b follows a
  EXPECT_EQ(ds.at(2, 1), 2u);  // c follows b
  EXPECT_EQ(ds.counts().nnz(), 2u);
}

TEST(BuildDs, ModesDifferOnRepeatedAdjacency) {
  const auto set = parse("a b a b\n");
  EXPECT_EQ(build_ds(set, CountingMode::per_stream).at(1, 0), 1u);
  EXPECT_EQ(build_ds(set, CountingMode::per_occurrence).at(1, 0), 2u);
  EXPECT_EQ(build_ds(set, CountingMode::per_occurrence).at(0, 1), 1u);
}

TEST(BuildDs, SingleItemStreamHasNoAdjacency) {
  EXPECT_EQ(build_ds(parse("a\n")).counts().nnz(), 0u);
}

TEST(BuildDs, SelfLoopOnlyFromImmediateRepeat) {
  EXPECT_EQ(build_ds(parse("a a b\n")).at(0, 0), 1u);
  EXPECT_EQ(build_ds(parse("a b a\n")).at(0, 0), 0u);
}

TEST(BuildCvs, PerStreamHandCounts) {
  const auto cvs = build_cvs(parse("a b c\nb c\n"));
  EXPECT_EQ(cvs.at(0, 1), 1u);
  EXPECT_EQ(cvs.at(0, 2), 1u);
  EXPECT_EQ(cvs.at(1, 2), 2u);
  EXPECT_EQ(cvs.at(2, 1), 2u);
}

TEST(BuildCvs, SetSemanticsAndZeroDiagonal) {
  const auto cvs = build_cvs(parse("a a b\n"));
  EXPECT_EQ(cvs.at(0, 1), 1u);
  EXPECT_EQ(cvs.at(0, 0), 0u);
  const auto occ = build_cvs(parse("a a b\n"), CountingMode::per_occurrence);
  EXPECT_EQ(occ.at(0, 1), 2u);
  EXPECT_EQ(occ.at(0, 0), 0u);
}

TEST(BuildProperties, RandomCorpora) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto set = random_corpus(gen, 2 + gen() % 12, 1 + gen() % 30, 9);
    const auto ds_s = build_ds(set, CountingMode::per_stream);
    const auto ds_o = build_ds(set, CountingMode::per_occurrence);
    const auto cvs = build_cvs(set, CountingMode::per_stream);
    const auto cvs_o = build_cvs(set, CountingMode::per_occurrence);

    Count total = 0;
    for (const auto& t : ds_o.counts().triplets()) total += t.count;
    EXPECT_EQ(total, set.total_items() - set.size());

    for (const auto& t : ds_s.counts().triplets()) EXPECT_LE(t.count, set.size());
    for (ItemId i = 0; i < cvs.n(); ++i) {
      EXPECT_EQ(cvs.at(i, i), 0u);
      EXPECT_EQ(cvs_o.at(i, i), 0u);
      for (ItemId j = 0; j < cvs.n(); ++j) {
        EXPECT_EQ(cvs.at(i, j), cvs.at(j, i));
        EXPECT_EQ(cvs_o.at(i, j), cvs_o.at(j, i));
        EXPECT_LE(cvs.at(i, j), set.size());
      }
    }
    for (ItemId c = 0; c < ds_o.n(); ++c) {
      Count sum = 0;
      for (ItemId r = 0; r < ds_o.n(); ++r) sum += ds_o.at(r, c);
      EXPECT_EQ(ds_o.counts().column_sum(c), sum);
    }
  }
}

TEST(SparseCountMatrix, RowAndColumnViewsAgree) {
  std::mt19937_64 gen(5);
  const auto m = random_matrix(gen, 15, 0.3, 9);
  for (ItemId r = 0; r < m.n(); ++r) {
    for (const auto& e : m.row(r)) EXPECT_EQ(m.at(r, e.index), e.count);
    for (std::size_t i = 1; i < m.row(r).size(); ++i) EXPECT_LT(m.row(r)[i - 1].index, m.row(r)[i].index);
  }
}

TEST(SparseCountMatrix, RejectsBadTriplets) {
  EXPECT_THROW(SparseCountMatrix::from_triplets(2, {{0, 1, 0}}), InvalidArgument);
  EXPECT_THROW(SparseCountMatrix::from_triplets(2, {{0, 2, 1}}), InvalidArgument);
  EXPECT_THROW(SparseCountMatrix::from_triplets(2, {{0, 1, 1}, {0, 1, 3}}), InvalidArgument);
}

TEST(CvsMatrix, RejectsAsymmetry) {
  EXPECT_THROW(CvsMatrix(SparseCountMatrix::from_triplets(2, {{0, 1, 1}}), CountingMode::per_stream), InvalidArgument);
  EXPECT_THROW(CvsMatrix(SparseCountMatrix::from_triplets(2, {{0, 0, 1}}), CountingMode::per_stream), InvalidArgument);
}

TEST(KAnonymity, ThresholdKeepsOnlyLargeCounts) {
  const auto m = SparseCountMatrix::from_triplets(3, {{0, 1, 1}, {1, 2, 4}, {2, 0, 5}});
  const auto f = k_anonymity_filter(m, 5);
  EXPECT_EQ(f.nnz(), 1u);
  EXPECT_EQ(f.at(2, 0), 5u);
}

TEST(KAnonymity, IdentityIdempotentMonotone) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_matrix(gen, 12, 0.4, 60);
    EXPECT_EQ(k_anonymity_filter(m, 1), m);
    for (Count k : {2u, 5u, 50u}) {
      const auto f = k_anonymity_filter(m, k);
      for (const auto& t : f.triplets()) EXPECT_GE(t.count, k);
      EXPECT_EQ(k_anonymity_filter(f, k), f);
      const auto g = k_anonymity_filter(m, k + 3);
      for (const auto& t : g.triplets()) EXPECT_EQ(f.at(t.row, t.col), t.count);
    }
  }
}

TEST(KAnonymity, KeepsCvsSymmetric) {
  const auto cvs = build_cvs(parse("a b c\nb c\nb c d\n"));
  const auto f = k_anonymity_filter(cvs, 2);
  EXPECT_EQ(f.at(1, 2), 3u);
  EXPECT_EQ(f.at(2, 1), 3u);
  EXPECT_EQ(f.counts().nnz(), 2u);
}

TEST(MatrixFile, DsRoundTrip) {
  std::mt19937_64 gen(3);
  const auto ds = build_ds(random_corpus(gen, 20, 50, 8), CountingMode::per_occurrence);
  std::stringstream io;
  write_matrix(ds, io);
  const auto file = read_matrix(io);
  EXPECT_EQ(file.kind, MatrixKind::ds);
  EXPECT_EQ(file.mode, CountingMode::per_occurrence);
  EXPECT_EQ(file.counts, ds.counts());
}

TEST(MatrixFile, CvsUpperTriangleMirroredOnLoad) {
  std::istringstream in("# kind=CVS mode=per_stream n=3\nrow\tcol\tcount\n0\t1\t1\n0\t2\t1\n1\t2\t2\n");
  const auto file = read_matrix(in);
  const CvsMatrix cvs(file.counts, file.mode);
  EXPECT_EQ(cvs, build_cvs(parse("a b c\nb c\n")));

  std::ostringstream out;
  write_matrix(cvs, out);
  EXPECT_EQ(out.str(), "# kind=CVS mode=per_stream n=3\nrow\tcol\tcount\n0\t1\t1\n0\t2\t1\n1\t2\t2\n");
}

TEST(MatrixFile, LoadErrors) {
  auto load = [](const std::string& body) {
    std::istringstream in("# kind=DS mode=per_stream n=3\nrow\tcol\tcount\n" + body);
    return read_matrix(in);
  };
  EXPECT_THROW(load("0\t1\t0\n"), FormatError);
  EXPECT_THROW(load("0\t3\t1\n"), FormatError);
  EXPECT_THROW(load("0\t1\t2\n0\t1\t2\n"), FormatError);
  EXPECT_THROW(load("0\t1\n"), FormatError);
  EXPECT_THROW(load("0\t1\t-2\n"), FormatError);
  std::istringstream cvs_dup("# kind=CVS mode=per_stream n=3\nrow\tcol\tcount\n0\t1\t1\n1\t0\t1\n");
  EXPECT_THROW(read_matrix(cvs_dup), FormatError);
  std::istringstream no_header("row\tcol\tcount\n");
  EXPECT_THROW(read_matrix(no_header), FormatError);
}

}  // namespace

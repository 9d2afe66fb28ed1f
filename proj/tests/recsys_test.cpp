#include "seqsynth/recsys.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "support/planted.hpp"

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

TEST(ItemKnn, IdenticalSupportIsOne) {
  const auto model = train_item_knn(parse("a b\nb a\n"), 15);
  EXPECT_DOUBLE_EQ(model.similarity(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(model.similarity(1, 0), 1.0);
}

TEST(ItemKnn, CosineOverUserSets) {
  // U_a = {0, 1}, U_b = {1}.
  const auto model = train_item_knn(parse("a\na b\n"), 15);
  EXPECT_NEAR(model.similarity(0, 1), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ItemKnn, DisjointItemsAreNotNeighbors) {
  const auto model = train_item_knn(parse("a b\nc\n"), 15);
  EXPECT_TRUE(model.neighbors[2].empty());
  for (const auto& nb : model.neighbors[0]) EXPECT_NE(nb.item, 2u);
}

TEST(ItemKnn, NeighborListInvariants) {
  std::mt19937_64 gen(50);
  const auto set = random_corpus(gen, 40, 300, 8);
  for (std::size_t k : {1u, 3u, 15u}) {
    const auto model = train_item_knn(set, k);
    for (ItemId i = 0; i < model.item_count(); ++i) {
      const auto& list = model.neighbors[i];
      EXPECT_LE(list.size(), k);
      for (std::size_t p = 0; p < list.size(); ++p) {
        EXPECT_NE(list[p].item, i);
        EXPECT_GT(list[p].similarity, 0.0);
        EXPECT_LE(list[p].similarity, 1.0 + 1e-12);
        if (p > 0) {
          EXPECT_TRUE(list[p - 1].similarity > list[p].similarity ||
                      (list[p - 1].similarity == list[p].similarity && list[p - 1].item < list[p].item));
        }
      }
    }
  }
  EXPECT_THROW(train_item_knn(set, 0), InvalidArgument);
}

TEST(Recommend, ScoresSumOverQueryItems) {
  ItemKnnModel model;
  model.k = 15;
  model.neighbors = {{{3, 0.6}, {2, 0.5}}, {{2, 0.4}}, {}, {}};
  const auto scored = recommend_scored(model, std::vector<ItemId>{0, 1}, 10);
  ASSERT_EQ(scored.size(), 2u);
  EXPECT_EQ(scored[0].item, 2u);
  EXPECT_NEAR(scored[0].score, 0.9, 1e-15);
  EXPECT_EQ(scored[1].item, 3u);
  EXPECT_NEAR(scored[1].score, 0.6, 1e-15);
  EXPECT_EQ(recommend(model, std::vector<ItemId>{0, 1}, 1), (std::vector<ItemId>{2}));
}

TEST(Recommend, EmptyAndUnknownQueries) {
  ItemKnnModel model;
  model.k = 2;
  model.neighbors = {{}, {{0, 0.5}}};
  EXPECT_TRUE(recommend(model, std::vector<ItemId>{0}, 10).empty());
  EXPECT_TRUE(recommend(model, std::vector<ItemId>{42}, 10).empty());
  EXPECT_EQ(recommend(model, std::vector<ItemId>{1, 1}, 10), (std::vector<ItemId>{0}));
}

TEST(Recommend, NeverReturnsQueryItems) {
  std::mt19937_64 gen(51);
  const auto model = train_item_knn(random_corpus(gen, 30, 200, 10), 15);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ItemId> query(1 + gen() % 6);
    for (auto& q : query) q = static_cast<ItemId>(gen() % 30);
    const auto recs = recommend_scored(model, query, 10);
    EXPECT_LE(recs.size(), 10u);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      EXPECT_EQ(std::find(query.begin(), query.end(), recs[i].item), query.end());
      if (i > 0) {
        EXPECT_GE(recs[i - 1].score, recs[i].score);
      }
    }
  }
}

// r1=1, r2=2 relevant; n=9 not.
TEST(Metrics, HandExamples) {
  const std::vector<ItemId> rec{1, 9, 2};
  const ItemSet rel{1, 2};
  EXPECT_NEAR(average_precision(rec, rel), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_NEAR(average_precision(rec, rel), 0.8333, 1e-4);
  EXPECT_NEAR(ndcg(rec, rel, 10), (1.0 + 0.5) / (1.0 + 1.0 / std::log2(3.0)), 1e-15);
  EXPECT_NEAR(ndcg(rec, rel, 10), 0.9197, 1e-4);
  EXPECT_NEAR(precision_at(rec, rel, 10), 0.2, 1e-15);
}

TEST(Metrics, Extremes) {
  const ItemSet rel{4, 5};
  EXPECT_DOUBLE_EQ(average_precision(std::vector<ItemId>{5, 4, 1}, rel), 1.0);
  EXPECT_DOUBLE_EQ(ndcg(std::vector<ItemId>{5, 4, 1}, rel, 10), 1.0);
  EXPECT_DOUBLE_EQ(average_precision(std::vector<ItemId>{1, 2}, rel), 0.0);
  EXPECT_DOUBLE_EQ(ndcg(std::vector<ItemId>{1, 2}, rel, 10), 0.0);
  EXPECT_DOUBLE_EQ(precision_at(std::vector<ItemId>{}, rel, 10), 0.0);
  std::vector<ItemId> ten(10);
  std::iota(ten.begin(), ten.end(), ItemId{0});
  EXPECT_DOUBLE_EQ(precision_at(ten, ItemSet(ten.begin(), ten.end()), 10), 1.0);
  EXPECT_THROW(average_precision(ten, ItemSet{}), InvalidArgument);
  EXPECT_THROW(ndcg(ten, ItemSet{}, 10), InvalidArgument);
}

TEST(Metrics, RepeatedHitCountsOnce) {
  const ItemSet rel{1, 2};
  EXPECT_NEAR(average_precision(std::vector<ItemId>{1, 1}, rel), 0.5, 1e-15);
  EXPECT_NEAR(precision_at(std::vector<ItemId>{1, 1}, rel, 2), 0.5, 1e-15);
}

TEST(Metrics, AgreeWithDefinitions) {
  std::mt19937_64 gen(52);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ItemId> rec(gen() % 15);
    for (auto& r : rec) r = static_cast<ItemId>(gen() % 25);
    std::set<ItemId> rel_set;
    const std::size_t rel_size = 1 + gen() % 8;
    while (rel_set.size() < rel_size) rel_set.insert(static_cast<ItemId>(gen() % 25));
    const ItemSet rel(rel_set.begin(), rel_set.end());
    const std::size_t cutoff = 1 + gen() % 12;
    const double ap = average_precision(rec, rel);
    const double nd = ndcg(rec, rel, cutoff);
    const double pn = precision_at(rec, rel, cutoff);
    EXPECT_NEAR(ap, oracle::average_precision(rec, rel_set), 1e-12);
    EXPECT_NEAR(nd, oracle::ndcg(rec, rel_set, cutoff), 1e-12);
    EXPECT_NEAR(pn, oracle::precision_at(rec, rel_set, cutoff), 1e-12);
    for (double v : {ap, nd, pn}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
  }
}

UtilityConfig small_config() {
  UtilityConfig c;
  c.folds = 5;
  c.generator.seed = 11;
  return c;
}

ClickstreamSet small_planted() {
  planted::PlantedParams p;
  p.items = 60;
  p.streams = 400;
  p.communities = 4;
  return planted::make_corpus(p);
}

TEST(Utility, FoldArtifactsIgnoreTestContent) {
  const auto corpus = small_planted();
  const auto config = small_config();
  const auto plan = make_folds(corpus, config.folds, config.generator.seed);
  const std::size_t fold = 2;

  std::vector<Clickstream> altered(corpus.streams().begin(), corpus.streams().end());
  std::mt19937_64 gen(53);
  for (std::size_t i = 0; i < altered.size(); ++i) {
    if (plan.assignment[i] != fold) continue;
    altered[i].assign(1 + gen() % 12, 0);
    for (auto& x : altered[i]) x = static_cast<ItemId>(gen() % corpus.item_count());
  }
  const ClickstreamSet other(corpus.shared_vocab(), std::move(altered));

  const auto a = prepare_fold(corpus, plan, fold, config);
  const auto b = prepare_fold(other, plan, fold, config);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.ds, b.ds);
  EXPECT_EQ(a.cvs, b.cvs);
  EXPECT_EQ(a.syn, b.syn);
  EXPECT_EQ(a.rnd, b.rnd);
  EXPECT_NE(a.test, b.test);
  EXPECT_EQ(a.syn.size(), a.train.size());
  EXPECT_EQ(a.rnd.size(), a.train.size());
}

TEST(Utility, DeterministicAndWorkerIndependent) {
  const auto corpus = small_planted();
  auto config = small_config();
  const auto one = run_utility_experiment(corpus, config);
  config.workers = 3;
  const auto three = run_utility_experiment(corpus, config);
  ASSERT_EQ(one.folds.size(), 5u);
  for (std::size_t f = 0; f < 5; ++f) EXPECT_EQ(one.folds[f].metrics, three.folds[f].metrics);
  std::ostringstream a;
  std::ostringstream b;
  write_utility_report(one, a);
  write_utility_report(three, b);
  EXPECT_EQ(a.str(), b.str());
  for (const auto& f : one.folds) {
    for (const auto& m : f.metrics) {
      for (double v : {m.map, m.ndcg, m.precision}) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
      }
    }
  }
}

TEST(Utility, FullSmoothingMakesSynLikeRnd) {
  const auto corpus = small_planted();
  auto config = small_config();
  config.generator.epsilon = 1.0;
  const auto r = run_utility_experiment(corpus, config);
  const auto& syn = r.mean_of(ModelSource::syn);
  const auto& rnd = r.mean_of(ModelSource::rnd);
  const auto& sds = r.stddev_of(ModelSource::syn);
  const auto& sdr = r.stddev_of(ModelSource::rnd);
  const double se = std::sqrt((sds.map * sds.map + sdr.map * sdr.map) / 5.0);
  EXPECT_LE(std::abs(syn.map - rnd.map), 4.0 * se + 1e-3);
  EXPECT_EQ(r.folds[0].syn_stats.epsilon_jumps, r.folds[0].syn_stats.hops);
}

TEST(Utility, ShortTestStreamsAreCounted) {
  std::ostringstream text;
  for (int i = 0; i < 40; ++i) text << "a b c d\n" << "e\n" << "b c d e a\n";
  const auto corpus = parse(text.str());
  auto config = small_config();
  config.folds = 4;
  const auto r = run_utility_experiment(corpus, config);
  EXPECT_EQ(r.excluded_streams, 40u);
  std::size_t users = 0;
  for (const auto& f : r.folds) users += f.users;
  EXPECT_EQ(users, 80u);
}

TEST(Utility, ReportListsEveryFoldAndModel) {
  const auto corpus = small_planted();
  const auto r = run_utility_experiment(corpus, small_config());
  std::ostringstream out;
  write_utility_report(r, out);
  const std::string s = out.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 15 + 1 + 3 + 2);
  EXPECT_NE(s.find("map_normalizer=|relevant|"), std::string::npos);
}

}  // namespace

#include "hypers2v/random_walk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "hypers2v/alias_table.hpp"
#include "test_support.hpp"

namespace hypers2v {
namespace {

// Upper 0.1% points of the chi-square distribution.
double chi_square_critical(std::size_t df) {
  static const double table[] = {0, 10.828, 13.816, 16.266, 18.467, 20.515, 22.458};
  return table[df];
}

TEST(AliasTable, ImpliedProbabilitiesMatchWeights) {
  const std::vector<double> w{1.0, 2.0, 0.0, 7.0, 0.5};
  AliasTable t(w);
  double total = 10.5;
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_NEAR(t.probability(i), w[i] / total, 1e-12);
  }
}

TEST(AliasTable, SampleFrequenciesPassChiSquare) {
  const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
  AliasTable t(w);
  Rng rng(3);
  std::vector<double> counts(4, 0.0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) counts[t.sample(rng)] += 1.0;
  double chi = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = draws * w[i] / 10.0;
    chi += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  EXPECT_LT(chi, chi_square_critical(3));
}

TEST(AliasTable, RejectsBadWeights) {
  EXPECT_THROW(AliasTable(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(AliasTable(std::vector<double>{1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
}

TEST(Rng, BelowStaysInRangeAndDeriveSeedSeparatesStreams) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) ASSERT_LT(rng.below(7), 7u);
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
}

MultilayerGraph single_layer() {
  LayerDistances d(4, 0);
  d.set(0, 0, 1, 0.2);
  d.set(0, 0, 2, 1.0);
  d.set(0, 0, 3, 2.5);
  d.set(0, 1, 2, 0.7);
  return build_multilayer(d);
}

TEST(Walks, InLayerTransitionsPassChiSquare) {
  auto g = single_layer();
  MultilayerWalker walker(g);
  const auto p = walker.transition_probabilities(0, 0);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-12);
  EXPECT_NEAR(p[0] / p[1], std::exp(-0.2) / std::exp(-1.0), 1e-12);

  std::map<NodeId, double> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    Rng rng(derive_seed(77, static_cast<std::uint64_t>(i)));
    auto w = walker.walk(0, 2, 0.3, rng);
    ASSERT_EQ(w.size(), 2u);
    counts[w[1]] += 1.0;
  }
  const auto nb = g.layer(0).neighbors(0);
  double chi = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    const double expected = draws * p[i];
    chi += (counts[nb[i]] - expected) * (counts[nb[i]] - expected) / expected;
  }
  EXPECT_LT(chi, chi_square_critical(2));
}

// Node 0 reaches only node 1 in layer 0 and only node 2 in layer 1. The
// first emitted token is 1 with probability 1 / (2 - q): stay (q), or go up
// and back down before staying, and so on.
TEST(Walks, StayProbabilityGovernsLayerChanges) {
  LayerDistances d(4, 1);
  d.set(0, 0, 1, 0.0);
  d.set(0, 2, 3, 0.0);
  d.set(1, 0, 2, 0.0);
  d.set(1, 1, 3, 0.0);
  auto g = build_multilayer(d);
  ASSERT_EQ(g.num_layers(), 2u);
  MultilayerWalker walker(g);
  for (double q : {0.3, 0.7}) {
    const int trials = 40000;
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
      Rng rng(derive_seed(5, static_cast<std::uint64_t>(i)));
      auto w = walker.walk(0, 2, q, rng);
      ASSERT_EQ(w.size(), 2u);
      ASSERT_TRUE(w[1] == 1 || w[1] == 2);
      hits += w[1] == 1;
    }
    const double p = 1.0 / (2.0 - q);
    const double sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(hits) / trials, p, 3 * sigma) << "q=" << q;
  }
}

TEST(Walks, LengthStartAndOrdering) {
  auto g = single_layer();
  WalkOptions opts;
  opts.walks_per_node = 3;
  opts.walk_length = 12;
  auto corpus = generate_walks(g, opts);
  ASSERT_EQ(corpus.walks.size(), 12u);
  for (std::size_t i = 0; i < corpus.walks.size(); ++i) {
    EXPECT_EQ(corpus.walks[i].size(), 12u);
    EXPECT_EQ(corpus.walks[i][0], corpus.meta[i].start);
    EXPECT_EQ(corpus.meta[i].start, i % 4);
    EXPECT_EQ(corpus.meta[i].round, i / 4);
  }
  EXPECT_EQ(corpus.token_count(), 144u);
}

TEST(Walks, EveryStepFollowsAnEdge) {
  auto g = build_multilayer(cumulative_distances(testing::random_hypergraph(15, 6, 4, 2)));
  WalkOptions opts;
  opts.walks_per_node = 5;
  auto corpus = generate_walks(g, opts);
  for (const auto& w : corpus.walks) {
    for (std::size_t i = 1; i < w.size(); ++i) {
      bool linked = false;
      for (std::size_t k = 0; k < g.num_layers() && !linked; ++k) {
        auto nb = g.layer(k).neighbors(w[i - 1]);
        linked = std::find(nb.begin(), nb.end(), w[i]) != nb.end();
      }
      ASSERT_TRUE(linked);
    }
  }
}

TEST(Walks, DeterministicAndThreadCountInvariant) {
  auto g = build_multilayer(cumulative_distances(testing::random_hypergraph(20, 8, 5, 6)));
  WalkOptions opts;
  opts.walks_per_node = 4;
  opts.walk_length = 30;
  opts.seed = 9;
  auto a = generate_walks(g, opts);
  auto b = generate_walks(g, opts);
  opts.threads = 3;
  auto c = generate_walks(g, opts);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  opts.seed = 10;
  EXPECT_NE(a.walks, generate_walks(g, opts).walks);
}

TEST(Walks, RejectsDegenerateStayProbability) {
  auto g = single_layer();
  WalkOptions opts;
  opts.stay_probability = 1.0;
  EXPECT_THROW(generate_walks(g, opts), std::invalid_argument);
  opts.stay_probability = 0.0;
  EXPECT_THROW(generate_walks(g, opts), std::invalid_argument);
}

TEST(Walks, CorpusFileUsesLabels) {
  WalkCorpus corpus;
  corpus.walks = {{0, 1, 0}, {1}};
  auto labels = NodeLabelMap::numbered(0);
  labels.intern("x");
  labels.intern("y");
  std::ostringstream out;
  write_corpus(corpus, labels, out);
  EXPECT_EQ(out.str(), "x y x\ny\n");
}

}  // namespace
}  // namespace hypers2v

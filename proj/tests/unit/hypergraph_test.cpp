#include "hypers2v/hypergraph.hpp"

#include <gtest/gtest.h>

#include <set>

#include "hypers2v/errors.hpp"
#include "hypers2v/hypergraph_io.hpp"
#include "test_support.hpp"

namespace hypers2v {
namespace {

using testing::bfs_shell;
using testing::data_path;

TEST(Hypergraph, StoresSortedEdgesAndIncidence) {
  auto g = Hypergraph::from_labels({{"c", "a", "b"}, {"b", "d"}});
  ASSERT_EQ(g.num_nodes(), 4u);
  ASSERT_EQ(g.num_edges(), 2u);
  // ids in first-seen order: c=0 a=1 b=2 d=3
  EXPECT_EQ(g.label(0), "c");
  auto e0 = g.edge(0);
  EXPECT_EQ(std::vector<NodeId>(e0.begin(), e0.end()), (std::vector<NodeId>{0, 1, 2}));
  EXPECT_EQ(g.degree(2), 2u);
  EXPECT_EQ(g.degree(3), 1u);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_EQ(g.max_edge_size(), 3u);
  EXPECT_THROW(g.degree(9), std::out_of_range);
}

TEST(Hypergraph, MergesRepeatedMembers) {
  auto g = Hypergraph::from_labels({{"a", "b", "a"}});
  EXPECT_EQ(g.edge_size(0), 2u);
}

TEST(Hypergraph, RejectsDegenerateEdges) {
  EXPECT_THROW(Hypergraph::from_labels({{"a", "a"}}), ValidationError);
  EXPECT_THROW(Hypergraph::from_labels({{"a"}}), ValidationError);
  auto labels = NodeLabelMap::numbered(3);
  EXPECT_THROW(Hypergraph(labels, {{0, 1}}), ValidationError);  // node 2 uncovered
  EXPECT_THROW(Hypergraph(labels, {{0, 5}}), ValidationError);
}

TEST(Hypergraph, DedupeKeepsFirstCopy) {
  auto g = Hypergraph::from_labels({{"a", "b"}, {"b", "a"}, {"a", "c"}}, true);
  EXPECT_EQ(g.num_edges(), 2u);
  auto kept = Hypergraph::from_labels({{"a", "b"}, {"b", "a"}}, false);
  EXPECT_EQ(kept.num_edges(), 2u);
}

TEST(CliqueExpansion, HyperedgeBecomesTriangle) {
  auto g = Hypergraph::from_labels({{"a", "b", "c"}});
  auto s = clique_expansion(g);
  EXPECT_EQ(s.num_edges(), 3u);
  EXPECT_TRUE(s.adjacent(0, 1));
  EXPECT_TRUE(s.adjacent(1, 2));
  EXPECT_TRUE(s.adjacent(0, 2));
}

TEST(CliqueExpansion, DisjointEdgesGiveDisjointCliques) {
  auto g = Hypergraph::from_labels({{"a", "b", "c"}, {"x", "y"}});
  auto s = clique_expansion(g);
  EXPECT_EQ(s.num_edges(), 4u);
  EXPECT_FALSE(s.adjacent(0, 3));
  auto comp = connected_components(g);
  EXPECT_NE(comp[0], comp[3]);
}

TEST(CliqueExpansion, OverlappingEdgesShareOneSimpleEdge) {
  auto g = Hypergraph::from_labels({{"a", "b", "c"}, {"a", "b"}});
  EXPECT_EQ(clique_expansion(g).num_edges(), 3u);
}

TEST(KHop, PathOfHyperedges) {
  auto g = Hypergraph::from_labels({{"a", "b"}, {"b", "c"}, {"c", "d"}});
  const NodeId a = *g.labels().find("a");
  EXPECT_EQ(k_hop_neighbors(g, a, 1), (std::vector<NodeId>{*g.labels().find("b")}));
  EXPECT_EQ(k_hop_neighbors(g, a, 2), (std::vector<NodeId>{*g.labels().find("c")}));
  EXPECT_EQ(k_hop_neighbors(g, a, 3), (std::vector<NodeId>{*g.labels().find("d")}));
  EXPECT_TRUE(k_hop_neighbors(g, a, 4).empty());
  EXPECT_THROW(k_hop_neighbors(g, a, 0), std::invalid_argument);
}

TEST(KHop, MatchesBfsOracleOnRandomGraphs) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = testing::random_hypergraph(25, 8, 5, seed);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      for (std::size_t k = 1; k <= 5; ++k) {
        ASSERT_EQ(k_hop_neighbors(g, v, k), bfs_shell(g, v, k))
            << "seed " << seed << " node " << v << " k " << k;
      }
    }
  }
}

TEST(KHop, ShellsPartitionTheComponent) {
  auto g = testing::random_hypergraph(30, 5, 4, 7);
  auto adj = clique_expansion(g);
  auto shells = hop_shells(adj, 0, 100);
  std::set<NodeId> seen;
  for (const auto& s : shells) {
    ASSERT_FALSE(s.empty());
    for (NodeId v : s) EXPECT_TRUE(seen.insert(v).second);
  }
  EXPECT_EQ(seen.size(), g.num_nodes());  // the spine connects everything
}

TEST(Components, LargestComponentKeepsLabels) {
  auto g = Hypergraph::from_labels({{"a", "b"}, {"x", "y", "z"}, {"z", "w"}, {"b", "c"}});
  auto big = largest_component(g);
  EXPECT_EQ(big.num_nodes(), 4u);
  EXPECT_EQ(big.num_edges(), 2u);
  EXPECT_TRUE(big.labels().find("x").has_value());
  EXPECT_FALSE(big.labels().find("a").has_value());
}

TEST(Datasets, LesmisMatchesPublishedStatistics) {
  auto g = load_hyperedge_list(data_path("lesmis.txt"));
  EXPECT_EQ(g.num_nodes(), 77u);
  EXPECT_EQ(g.num_edges(), 157u);
  EXPECT_EQ(g.max_degree(), 39u);
  EXPECT_EQ(g.max_edge_size(), 9u);
  auto comp = connected_components(g);
  EXPECT_EQ(std::set<std::size_t>(comp.begin(), comp.end()).size(), 1u);
}

TEST(Datasets, ZooStatistics) {
  auto g = load_hyperedge_list(data_path("zoo.txt"));
  EXPECT_EQ(g.num_nodes(), 101u);
  EXPECT_EQ(g.num_edges(), 42u);  // the legs=5 group is a singleton
  EXPECT_EQ(g.max_degree(), 17u);
  EXPECT_EQ(g.max_edge_size(), 93u);
}

TEST(Datasets, LesmisCliqueExpansionMatchesPairEnumeration) {
  auto g = load_hyperedge_list(data_path("lesmis.txt"));
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto m = g.edge(e);
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) pairs.emplace(m[i], m[j]);
    }
  }
  auto s = clique_expansion(g);
  EXPECT_EQ(s.num_edges(), pairs.size());
  auto list = s.edge_list();
  EXPECT_EQ((std::set<std::pair<NodeId, NodeId>>(list.begin(), list.end())), pairs);
}

}  // namespace
}  // namespace hypers2v

#include "hypers2v/toygen.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hypers2v/hypergraph_io.hpp"

namespace hypers2v {
namespace {

std::size_t class_count(const std::vector<std::size_t>& colors) {
  return std::set<std::size_t>(colors.begin(), colors.end()).size();
}

TEST(Automorphism, SingleHyperedgeIsFullySymmetric) {
  auto g = Hypergraph::from_labels({{"a", "b", "c", "d", "e"}});
  EXPECT_EQ(class_count(automorphism_classes(g)), 1u);
}

TEST(Automorphism, StarOfEqualSpokesHasHubAndLeaves) {
  ToySpec spec;
  spec.star.spoke_sizes = {3, 3, 3, 3};
  auto toy = generate_toy(spec);
  EXPECT_EQ(toy.num_colors, 2u);
  const NodeId hub = *toy.graph.labels().find("hub");
  for (NodeId v = 0; v < toy.graph.num_nodes(); ++v) {
    if (v != hub) EXPECT_NE(toy.color[v], toy.color[hub]);
  }
}

TEST(Automorphism, SameColorNodesAreMappedByAVerifiedAutomorphism) {
  for (auto t : {ToyTopology::kStar, ToyTopology::kCircle, ToyTopology::kMesh,
                 ToyTopology::kTower, ToyTopology::kTwin}) {
    auto toy = generate_toy(ToySpec::preset(t), 3);
    const auto& g = toy.graph;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
        auto perm = find_automorphism(g, u, v);
        ASSERT_EQ(perm.has_value(), toy.color[u] == toy.color[v])
            << to_string(t) << ' ' << g.label(u) << ' ' << g.label(v);
        if (perm) {
          ASSERT_TRUE(is_automorphism(g, *perm));
          ASSERT_EQ((*perm)[u], v);
        }
      }
    }
  }
}

TEST(Automorphism, RejectsNonBijections) {
  auto g = Hypergraph::from_labels({{"a", "b"}, {"b", "c"}});
  EXPECT_TRUE(is_automorphism(g, std::vector<NodeId>{2, 1, 0}));
  EXPECT_FALSE(is_automorphism(g, std::vector<NodeId>{1, 0, 2}));
  EXPECT_FALSE(is_automorphism(g, std::vector<NodeId>{0, 0, 2}));
  EXPECT_FALSE(is_automorphism(g, std::vector<NodeId>{0, 1}));
}

TEST(Presets, FrozenSizesAndClassCounts) {
  struct Expect {
    ToyTopology t;
    std::size_t nodes, edges, colors;
  };
  for (auto e : {Expect{ToyTopology::kStar, 16, 6, 3}, Expect{ToyTopology::kCircle, 15, 6, 3},
                 Expect{ToyTopology::kMesh, 16, 9, 3}, Expect{ToyTopology::kTower, 15, 17, 3},
                 Expect{ToyTopology::kTwin, 16, 6, 3}}) {
    auto toy = generate_toy(ToySpec::preset(e.t));
    EXPECT_EQ(toy.graph.num_nodes(), e.nodes) << to_string(e.t);
    EXPECT_EQ(toy.graph.num_edges(), e.edges) << to_string(e.t);
    EXPECT_EQ(toy.num_colors, e.colors) << to_string(e.t);
    EXPECT_EQ(class_count(toy.color), toy.num_colors);
  }
}

TEST(Presets, TwinMirrorsShareColorsAcrossComponents) {
  auto toy = generate_toy(ToySpec::preset(ToyTopology::kTwin), 7);
  const auto comp = connected_components(toy.graph);
  EXPECT_EQ(std::set<std::size_t>(comp.begin(), comp.end()).size(), 2u);
  for (NodeId v = 0; v < toy.graph.num_nodes(); ++v) {
    const std::string& label = toy.graph.label(v);
    if (label.rfind("A_", 0) != 0) continue;
    const NodeId mirror = *toy.graph.labels().find("B_" + label.substr(2));
    EXPECT_EQ(toy.color[v], toy.color[mirror]);
    EXPECT_NE(comp[v], comp[mirror]);
  }
}

TEST(Presets, SeedOnlyRelabels) {
  for (auto t : {ToyTopology::kMesh, ToyTopology::kTower}) {
    auto a = generate_toy(ToySpec::preset(t), 0);
    auto b = generate_toy(ToySpec::preset(t), 42);
    EXPECT_EQ(canonical_edge_multiset(a.graph), canonical_edge_multiset(b.graph));
    for (NodeId u = 0; u < a.graph.num_nodes(); ++u) {
      for (NodeId v = 0; v < a.graph.num_nodes(); ++v) {
        const NodeId bu = *b.graph.labels().find(a.graph.label(u));
        const NodeId bv = *b.graph.labels().find(a.graph.label(v));
        ASSERT_EQ(a.color[u] == a.color[v], b.color[bu] == b.color[bv]);
      }
    }
  }
}

TEST(Presets, InvalidParametersThrow) {
  ToySpec spec;
  spec.star.spoke_sizes = {1};
  EXPECT_THROW(generate_toy(spec), std::invalid_argument);
  spec = ToySpec::preset(ToyTopology::kCircle);
  spec.circle.edge_sizes = {3, 3};
  EXPECT_THROW(generate_toy(spec), std::invalid_argument);
  spec = ToySpec::preset(ToyTopology::kTower);
  spec.tower.width = 1;
  EXPECT_THROW(generate_toy(spec), std::invalid_argument);
  EXPECT_THROW(parse_topology("hexagon"), std::invalid_argument);
  EXPECT_EQ(parse_topology("mesh"), ToyTopology::kMesh);
}

TEST(Presets, ColorSidecarFormat) {
  ToySpec spec;
  spec.star.spoke_sizes = {2, 2};
  auto toy = generate_toy(spec);
  std::ostringstream out;
  write_colors(toy, out);
  EXPECT_EQ(out.str(), "hub 0\ns0_1 1\ns1_1 1\n");
}

TEST(Coauthorship, ConnectedDeterministicAndSized) {
  CoauthorParams p;
  auto g = coauthorship_network(p, 1);
  EXPECT_GT(g.num_nodes(), 700u);
  EXPECT_LE(g.num_nodes(), p.authors);
  EXPECT_LE(g.max_edge_size(), p.max_size);
  const auto comp = connected_components(g);
  EXPECT_EQ(std::set<std::size_t>(comp.begin(), comp.end()).size(), 1u);
  EXPECT_EQ(canonical_edge_multiset(g), canonical_edge_multiset(coauthorship_network(p, 1)));
}

}  // namespace
}  // namespace hypers2v

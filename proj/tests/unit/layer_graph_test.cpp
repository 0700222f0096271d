#include "hypers2v/layer_graph.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace hypers2v {
namespace {

// Three nodes, two layers. Layer 1 only links 0 and 1.
const double kCmpdExample = 3.0 * std::expm1(1.0 / 6.0);  // ~0.54408

LayerDistances small_distances() {
  LayerDistances d(3, 1);
  d.set(0, 0, 1, kCmpdExample);
  d.set(0, 0, 2, 0.0);
  d.set(0, 1, 2, 2.0);
  d.set(1, 0, 1, 1.0);
  return d;
}

TEST(Multilayer, WeightsAreNegativeExponentials) {
  auto g = build_multilayer(small_distances());
  ASSERT_EQ(g.num_layers(), 2u);
  const auto& l0 = g.layer(0);
  ASSERT_EQ(l0.degree(0), 2u);
  EXPECT_EQ(l0.neighbors(0)[0], 1u);
  EXPECT_NEAR(l0.neighbor_weights(0)[0], std::exp(-kCmpdExample), 1e-15);
  EXPECT_NEAR(l0.neighbor_weights(0)[0], 0.580375, 1e-6);
  EXPECT_DOUBLE_EQ(l0.neighbor_weights(0)[1], 1.0);
  EXPECT_EQ(l0.num_edges(), 3u);
  const double mean = (std::exp(-kCmpdExample) + 1.0 + std::exp(-2.0)) / 3.0;
  EXPECT_NEAR(l0.mean_weight, mean, 1e-15);
}

TEST(Multilayer, AboveMeanCountsAndLayerWeights) {
  auto g = build_multilayer(small_distances());
  const auto& l0 = g.layer(0);
  // mean ~ 0.5386: above it are w(0,1) ~ 0.580 and w(0,2) = 1
  EXPECT_EQ(l0.above_mean[0], 2u);
  EXPECT_EQ(l0.above_mean[1], 1u);
  EXPECT_EQ(l0.above_mean[2], 1u);
  EXPECT_NEAR(*g.up_weight(0, 0), std::log(2.0 + std::numbers::e), 1e-15);
  EXPECT_NEAR(*g.up_weight(0, 1), std::log(1.0 + std::numbers::e), 1e-15);
  // node 2 has no layer-1 edges, so it cannot move up
  EXPECT_FALSE(g.up_weight(0, 2).has_value());
  EXPECT_FALSE(g.down_weight(0, 0).has_value());
  EXPECT_EQ(*g.down_weight(1, 0), 1.0);
  EXPECT_FALSE(g.up_weight(1, 0).has_value());
}

TEST(Multilayer, AdjacencyIsSymmetric) {
  auto g = build_multilayer(small_distances());
  for (std::size_t k = 0; k < g.num_layers(); ++k) {
    const auto& l = g.layer(k);
    for (NodeId u = 0; u < 3; ++u) {
      auto nb = l.neighbors(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        auto back = l.neighbors(nb[i]);
        auto it = std::find(back.begin(), back.end(), u);
        ASSERT_NE(it, back.end());
        EXPECT_EQ(l.neighbor_weights(nb[i])[static_cast<std::size_t>(it - back.begin())],
                  l.neighbor_weights(u)[i]);
      }
    }
  }
}

TEST(Multilayer, DropsLayersFromFirstEmptyOne) {
  LayerDistances d(3, 3);
  d.set(0, 0, 1, 0.1);
  d.set(0, 1, 2, 0.1);
  d.set(2, 0, 1, 0.3);  // unreachable past the empty layer 1
  auto g = build_multilayer(d);
  EXPECT_EQ(g.num_layers(), 1u);
}

TEST(Multilayer, HistogramCountsEveryEdgeOnce) {
  auto g = build_multilayer(small_distances());
  std::ostringstream out;
  write_weight_histograms(g, out, 4);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "layer,bin_lo,bin_hi,count");
  std::size_t total = 0;
  while (std::getline(in, line)) total += std::stoul(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(total, 4u);
}

}  // namespace
}  // namespace hypers2v

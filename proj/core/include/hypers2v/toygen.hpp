#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypers2v/hypergraph.hpp"

namespace hypers2v {

enum class ToyTopology { kStar, kCircle, kMesh, kTower, kTwin };

std::string_view to_string(ToyTopology topology);
/// Accepts "star", "circle", "mesh", "tower", "twin".
ToyTopology parse_topology(std::string_view name);

/// A hub node sharing one hyperedge of each listed size with fresh leaves.
struct StarParams {
  std::vector<std::uint32_t> spoke_sizes{3, 3, 3, 4, 4, 4};
};

/// A ring of hyperedges; consecutive edges share one connector node and the
/// remaining members of each edge are private to it.
struct CircleParams {
  std::vector<std::uint32_t> edge_sizes{3, 4, 3, 4, 3, 4};
};

/// A rows x cols node grid covered by every block x block window.
struct MeshParams {
  std::size_t rows = 4;
  std::size_t cols = 4;
  std::size_t block = 2;
};

/// `floors` hyperedges of `width` nodes each, stacked; node j of a floor is
/// tied to node j of the next floor by a 2-node pillar edge.
struct TowerParams {
  std::size_t floors = 5;
  std::size_t width = 3;
};

/// Two disjoint copies of a base topology.
struct TwinParams {
  ToyTopology base = ToyTopology::kStar;
};

struct ToySpec {
  ToyTopology topology = ToyTopology::kStar;
  StarParams star;
  CircleParams circle;
  MeshParams mesh;
  TowerParams tower;
  TwinParams twin;

  /// The shipped preset for a topology. The twin preset duplicates a star
  /// with spokes {3, 3, 4}.
  static ToySpec preset(ToyTopology topology);
};

/// A toy hypergraph with its structural-equivalence classes ("colors"):
/// nodes share a color iff some hypergraph automorphism maps one onto the
/// other. Colors are numbered by first appearance in node-id order.
struct ToyNetwork {
  Hypergraph graph;
  std::vector<std::size_t> color;
  std::size_t num_colors = 0;
};

/// Builds the toy and computes its colors with the automorphism search.
/// The seed only permutes edge and member order (and therefore node ids);
/// the labelled structure is the same for every seed.
ToyNetwork generate_toy(const ToySpec& spec, std::uint64_t seed = 0);

/// True when `perm` (node id -> node id) is a bijection mapping the
/// hyperedge multiset onto itself.
bool is_automorphism(const Hypergraph& g, std::span<const NodeId> perm);

/// Searches for an automorphism with perm[from] == to.
std::optional<std::vector<NodeId>> find_automorphism(const Hypergraph& g,
                                                     NodeId from, NodeId to);

/// Orbit id per node under the automorphism group.
std::vector<std::size_t> automorphism_classes(const Hypergraph& g);

/// Color sidecar: "label class_id" per node.
void write_colors(const ToyNetwork& toy, std::ostream& out);

/// Synthetic co-authorship hypergraph: papers are hyperedges, authors are
/// drawn by preferential attachment mostly from the paper's community.
struct CoauthorParams {
  std::size_t authors = 1000;
  std::size_t papers = 1500;
  std::size_t communities = 25;
  double cross_community = 0.1;
  std::uint32_t min_size = 2;
  std::uint32_t max_size = 8;
  double size_decay = 0.55;  // P(size = s) proportional to decay^(s - min)
};

/// The largest connected component of the generated network.
Hypergraph coauthorship_network(const CoauthorParams& params,
                                std::uint64_t seed);

}  // namespace hypers2v

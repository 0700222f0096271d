#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hypers2v/hypergraph.hpp"
#include "hypers2v/layer_distances.hpp"

namespace hypers2v {

/// One similarity layer: weighted undirected edges w(u, v) = exp(-dis^k(u, v))
/// over the pairs valid at this hop, stored as per-node adjacency.
struct SimilarityLayer {
  std::vector<std::size_t> offsets;  // size num_nodes + 1
  std::vector<NodeId> targets;
  std::vector<double> weights;
  double mean_weight = 0.0;          // over unordered edges
  std::vector<std::size_t> above_mean;  // Gamma^k(u)

  std::span<const NodeId> neighbors(NodeId u) const {
    return {targets.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
  std::span<const double> neighbor_weights(NodeId u) const {
    return {weights.data() + offsets[u], offsets[u + 1] - offsets[u]};
  }
  std::size_t degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
  std::size_t num_edges() const { return targets.size() / 2; }
};

/// Stack of similarity layers with inter-layer transition weights. Moving
/// down always has weight 1; moving up from layer k has weight
/// ln(Gamma^k(u) + e) and exists only while u has edges in layer k + 1.
class MultilayerGraph {
 public:
  MultilayerGraph() = default;

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_layers() const noexcept { return layers_.size(); }
  const SimilarityLayer& layer(std::size_t k) const { return layers_.at(k); }

  std::optional<double> up_weight(std::size_t k, NodeId u) const;
  std::optional<double> down_weight(std::size_t k, NodeId u) const;

  friend MultilayerGraph build_multilayer(const LayerDistances& distances);

 private:
  std::size_t num_nodes_ = 0;
  std::vector<SimilarityLayer> layers_;
};

/// Layers are kept from hop 0 up to the first layer without edges; that layer
/// and any deeper ones are dropped with a warning.
MultilayerGraph build_multilayer(const LayerDistances& distances);

/// Debug dump: CSV "layer,bin_lo,bin_hi,count" of edge weights per layer.
void write_weight_histograms(const MultilayerGraph& graph, std::ostream& out,
                             std::size_t bins = 20);

}  // namespace hypers2v

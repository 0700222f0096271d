#include "hypers2v/layer_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "hypers2v/log.hpp"

namespace hypers2v {

std::optional<double> MultilayerGraph::up_weight(std::size_t k,
                                                 NodeId u) const {
  if (k + 1 >= layers_.size()) return std::nullopt;
  if (layers_[k + 1].degree(u) == 0) return std::nullopt;
  return std::log(static_cast<double>(layers_[k].above_mean[u]) +
                  std::numbers::e);
}

std::optional<double> MultilayerGraph::down_weight(std::size_t k,
                                                   NodeId u) const {
  if (k == 0 || k >= layers_.size()) return std::nullopt;
  if (layers_[k - 1].degree(u) == 0) return std::nullopt;
  return 1.0;
}

MultilayerGraph build_multilayer(const LayerDistances& distances) {
  MultilayerGraph graph;
  const std::size_t n = distances.num_nodes();
  graph.num_nodes_ = n;

  for (std::size_t k = 0; k < distances.num_layers(); ++k) {
    const auto values = distances.layer_values(k);
    const auto valid = distances.layer_validity(k);

    SimilarityLayer layer;
    layer.offsets.assign(n + 1, 0);
    std::size_t edge_count = 0;
    double weight_sum = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        const std::size_t p = distances.pair_index(u, v);
        if (!valid[p]) continue;
        ++layer.offsets[u + 1];
        ++layer.offsets[v + 1];
        ++edge_count;
        weight_sum += std::exp(-values[p]);
      }
    }
    if (edge_count == 0) {
      log::warn("layer " + std::to_string(k) +
                " has no valid pairs; dropping it and deeper layers");
      break;
    }
    for (std::size_t u = 0; u < n; ++u) layer.offsets[u + 1] += layer.offsets[u];
    layer.targets.resize(layer.offsets[n]);
    layer.weights.resize(layer.offsets[n]);
    layer.mean_weight = weight_sum / static_cast<double>(edge_count);

    std::vector<std::size_t> cursor(layer.offsets.begin(), layer.offsets.end() - 1);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const std::size_t p = distances.pair_index(u, v);
        if (!valid[p]) continue;
        layer.targets[cursor[u]] = v;
        layer.weights[cursor[u]] = std::exp(-values[p]);
        ++cursor[u];
      }
    }
    layer.above_mean.assign(n, 0);
    for (NodeId u = 0; u < n; ++u) {
      for (double w : layer.neighbor_weights(u)) {
        if (w > layer.mean_weight) ++layer.above_mean[u];
      }
    }
    graph.layers_.push_back(std::move(layer));
  }
  return graph;
}

void write_weight_histograms(const MultilayerGraph& graph, std::ostream& out,
                             std::size_t bins) {
  bins = std::max<std::size_t>(bins, 1);
  out << "layer,bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < graph.num_layers(); ++k) {
    std::vector<std::size_t> counts(bins, 0);
    const auto& layer = graph.layer(k);
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
      auto nb = layer.neighbors(u);
      auto w = layer.neighbor_weights(u);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] < u) continue;
        auto bin = static_cast<std::size_t>(w[i] * static_cast<double>(bins));
        ++counts[std::min(bin, bins - 1)];
      }
    }
    for (std::size_t b = 0; b < bins; ++b) {
      out << k << ',' << static_cast<double>(b) / static_cast<double>(bins)
          << ',' << static_cast<double>(b + 1) / static_cast<double>(bins)
          << ',' << counts[b] << '\n';
    }
  }
}

}  // namespace hypers2v

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hypers2v/hypergraph.hpp"
#include "hypers2v/structure_distance.hpp"

namespace hypers2v {

enum class DistanceMode {
  kCollapsed,    // CHD / CNCHD with cmpd and cncmpd
  kUncollapsed,  // raw HD / neighbor HD lists with mpd (ablation)
};

struct DistanceOptions {
  std::size_t k_max = 5;
  DistanceMode mode = DistanceMode::kCollapsed;
  unsigned exponent = kDefaultExponent;
  std::size_t threads = 1;  // 0 = hardware concurrency
};

/// Cumulative structural distances dis^k(u, v) for k = 0..k_max over all
/// unordered node pairs, stored as upper triangles with a validity flag per
/// pair and layer. A pair is valid at hop k when both nodes have at least one
/// neighbor exactly k hops away.
class LayerDistances {
 public:
  LayerDistances() = default;
  LayerDistances(std::size_t num_nodes, std::size_t k_max);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t k_max() const noexcept { return k_max_; }
  std::size_t num_layers() const noexcept { return k_max_ + 1; }
  std::size_t pair_count() const noexcept { return pair_count_; }

  /// Index of the unordered pair {u, v}, u != v, in row-major upper-triangle
  /// order.
  std::size_t pair_index(NodeId u, NodeId v) const;

  /// dis^k(u, u) is 0 and always valid.
  bool valid(std::size_t k, NodeId u, NodeId v) const;
  std::optional<double> at(std::size_t k, NodeId u, NodeId v) const;

  /// Value at the deepest layer where the pair is valid (layer 0 at least).
  double deepest(NodeId u, NodeId v) const;
  std::size_t deepest_layer(NodeId u, NodeId v) const;

  void set(std::size_t k, NodeId u, NodeId v, double value);
  void set_by_index(std::size_t k, std::size_t pair, double value);

  std::span<const double> layer_values(std::size_t k) const;
  std::span<const std::uint8_t> layer_validity(std::size_t k) const;

  /// Binary cache format: magic "HS2VDIST", u32 version, u32 k_max,
  /// u64 node count, then per layer a validity bitmap over the pairs
  /// (LSB-first) followed by one little-endian double per pair.
  void save(std::ostream& out) const;
  static LayerDistances load(std::istream& in);

  bool operator==(const LayerDistances&) const = default;

 private:
  void check_layer(std::size_t k) const;

  std::size_t num_nodes_ = 0;
  std::size_t k_max_ = 0;
  std::size_t pair_count_ = 0;
  std::vector<std::vector<double>> values_;
  std::vector<std::vector<std::uint8_t>> valid_;
};

/// Computes dis^k for every valid pair: dis^0 = D^0, dis^k = dis^{k-1} + D^k,
/// where D^k compares the k-hop neighborhood signatures. Pairs are processed
/// in parallel; the output does not depend on the thread count.
LayerDistances cumulative_distances(const Hypergraph& g,
                                    const DistanceOptions& options = {});

}  // namespace hypers2v

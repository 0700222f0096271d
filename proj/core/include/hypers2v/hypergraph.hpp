#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hypers2v {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Bijection between external string labels and dense node ids. Ids are
/// handed out in first-seen order.
class NodeLabelMap {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const;
  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// Map with labels "0", "1", ... "n-1".
  static NodeLabelMap numbered(std::size_t n);

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> ids_;
};

/// Immutable hypergraph. Every hyperedge is a sorted list of at least two
/// distinct node ids, and every node belongs to at least one hyperedge.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds from id lists. Member lists are sorted and repeated members within
  /// one edge are merged; throws ValidationError when an edge ends up with
  /// fewer than two members, an id is out of range, or a labelled node is
  /// not covered by any edge. With `dedupe`, only the first occurrence of
  /// each distinct member set is kept.
  Hypergraph(NodeLabelMap labels, std::vector<std::vector<NodeId>> edges,
             bool dedupe = false);

  /// Convenience constructor from label lists.
  static Hypergraph from_labels(
      const std::vector<std::vector<std::string>>& edges, bool dedupe = false);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return edge_offsets_.size() - 1; }

  std::span<const NodeId> edge(EdgeId e) const;
  std::size_t edge_size(EdgeId e) const { return edge(e).size(); }
  std::span<const EdgeId> incident_edges(NodeId v) const;

  /// Number of incident hyperedges; throws std::out_of_range for a bad id.
  std::size_t degree(NodeId v) const;

  const NodeLabelMap& labels() const noexcept { return labels_; }
  const std::string& label(NodeId v) const { return labels_.label(v); }

  std::size_t max_degree() const;
  std::size_t max_edge_size() const;

 private:
  NodeLabelMap labels_;
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<NodeId> edge_members_;
  std::vector<std::size_t> node_offsets_{0};
  std::vector<EdgeId> node_edges_;
};

/// Undirected simple graph in CSR form with sorted neighbor lists.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  SimpleGraph(std::size_t num_nodes,
              std::vector<std::pair<NodeId, NodeId>> edges);

  std::size_t num_nodes() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }
  std::span<const NodeId> neighbors(NodeId v) const;
  bool adjacent(NodeId u, NodeId v) const;

  /// Each undirected edge once, as (u, v) with u < v, sorted.
  std::vector<std::pair<NodeId, NodeId>> edge_list() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
};

/// Clique expansion: u ~ w iff u != w share at least one hyperedge.
SimpleGraph clique_expansion(const Hypergraph& g);

/// Breadth-first shells around `source`: result[k] holds the nodes at
/// shortest-path distance exactly k (result[0] == {source}). Stops after
/// `max_hop` or when a shell is empty; trailing empty shells are not stored.
std::vector<std::vector<NodeId>> hop_shells(const SimpleGraph& adjacency,
                                            NodeId source,
                                            std::size_t max_hop);

/// Nodes at exactly k hops from v under co-membership adjacency, sorted.
std::vector<NodeId> k_hop_neighbors(const Hypergraph& g, NodeId v,
                                    std::size_t k);

/// Component id per node (components numbered in order of smallest member).
std::vector<std::size_t> connected_components(const Hypergraph& g);

/// Sub-hypergraph of the largest connected component; ties go to the
/// component containing the smallest node id. Labels and relative
/// edge order are preserved.
Hypergraph largest_component(const Hypergraph& g);

}  // namespace hypers2v

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hypers2v/alias_table.hpp"
#include "hypers2v/hypergraph.hpp"
#include "hypers2v/layer_graph.hpp"

namespace hypers2v {

struct WalkOptions {
  std::size_t walks_per_node = 100;
  std::size_t walk_length = 80;  // emitted tokens, including the start node
  double stay_probability = 0.3;
  std::uint64_t seed = 1;
  std::size_t threads = 1;  // 0 = hardware concurrency
};

struct WalkMeta {
  NodeId start = 0;
  std::size_t round = 0;
  std::uint64_t seed = 0;
  bool operator==(const WalkMeta&) const = default;
};

/// Node-id sequences (layer information stripped), ordered round by round
/// and, within a round, by start node.
struct WalkCorpus {
  std::vector<std::vector<NodeId>> walks;
  std::vector<WalkMeta> meta;

  std::size_t token_count() const;
  bool operator==(const WalkCorpus&) const = default;
};

/// Precomputed sampling tables for walking one multilayer graph.
class MultilayerWalker {
 public:
  explicit MultilayerWalker(const MultilayerGraph& graph);

  /// One walk from `start` at layer 0. In-layer moves (probability q)
  /// pick a neighbor proportionally to its weight and emit it; layer moves
  /// go up with probability w_up / (w_up + w_down), are clamped at the
  /// boundaries and emit nothing.
  std::vector<NodeId> walk(NodeId start, std::size_t length,
                           double stay_probability, Rng& rng) const;

  /// Normalized in-layer transition probabilities from u at layer k, in the
  /// order of `graph.layer(k).neighbors(u)`.
  std::vector<double> transition_probabilities(std::size_t k, NodeId u) const;

 private:
  const MultilayerGraph* graph_;
  std::vector<std::vector<AliasTable>> tables_;  // [layer][node]
};

WalkCorpus generate_walks(const MultilayerGraph& graph,
                          const WalkOptions& options);

/// One walk per line, space-separated node labels.
void write_corpus(const WalkCorpus& corpus, const NodeLabelMap& labels,
                  std::ostream& out);

}  // namespace hypers2v

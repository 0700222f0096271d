#pragma once

#include <cstddef>
#include <cstdint>

#include "hypers2v/hypergraph.hpp"
#include "hypers2v/layer_distances.hpp"
#include "hypers2v/layer_graph.hpp"
#include "hypers2v/random_walk.hpp"
#include "hypers2v/skipgram.hpp"

namespace hypers2v {

struct EmbedConfig {
  std::size_t k_max = 5;
  DistanceMode mode = DistanceMode::kCollapsed;
  unsigned exponent = kDefaultExponent;
  std::size_t walks_per_node = 100;
  std::size_t walk_length = 80;
  double stay_probability = 0.3;
  std::size_t dim = 64;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  std::uint64_t seed = 1;
  std::size_t threads = 1;  // 0 = hardware concurrency
  // Forces a single SGNS worker so that the embedding is reproducible.
  // Distances and walks are thread-count invariant regardless.
  bool deterministic = true;

  DistanceOptions distance_options() const;
  WalkOptions walk_options() const;
  SgnsOptions sgns_options() const;
};

struct EmbedResult {
  LayerDistances distances;
  MultilayerGraph multilayer;
  WalkCorpus corpus;
  EmbeddingMatrix embedding;
};

/// Full pipeline: distances, multilayer graph, walks, skip-gram.
EmbedResult embed(const Hypergraph& g, const EmbedConfig& config);

/// Same, reusing precomputed distances (e.g. from a cache file).
EmbedResult embed(const Hypergraph& g, LayerDistances distances,
                  const EmbedConfig& config);

}  // namespace hypers2v

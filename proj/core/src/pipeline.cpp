#include "hypers2v/pipeline.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "hypers2v/log.hpp"

namespace hypers2v {

DistanceOptions EmbedConfig::distance_options() const {
  return {k_max, mode, exponent, threads};
}

WalkOptions EmbedConfig::walk_options() const {
  return {walks_per_node, walk_length, stay_probability, seed, threads};
}

SgnsOptions EmbedConfig::sgns_options() const {
  SgnsOptions o;
  o.dim = dim;
  o.window = window;
  o.negatives = negatives;
  o.epochs = epochs;
  o.seed = seed;
  o.threads = deterministic ? 1 : threads;
  return o;
}

EmbedResult embed(const Hypergraph& g, const EmbedConfig& config) {
  log::info("computing structural distances up to hop " +
            std::to_string(config.k_max));
  return embed(g, cumulative_distances(g, config.distance_options()), config);
}

EmbedResult embed(const Hypergraph& g, LayerDistances distances,
                  const EmbedConfig& config) {
  if (distances.num_nodes() != g.num_nodes()) {
    throw std::invalid_argument("distance table does not match the hypergraph");
  }
  EmbedResult r;
  r.distances = std::move(distances);
  r.multilayer = build_multilayer(r.distances);
  log::info("multilayer graph with " + std::to_string(r.multilayer.num_layers()) +
            " layers; sampling walks");
  r.corpus = generate_walks(r.multilayer, config.walk_options());
  log::info("training skip-gram on " + std::to_string(r.corpus.token_count()) +
            " tokens");
  r.embedding = train_embeddings(g.num_nodes(), r.corpus, config.sgns_options());
  return r;
}

}  // namespace hypers2v

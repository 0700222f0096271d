#include "hypers2v/random_walk.hpp"

#include <ostream>
#include <stdexcept>

#include "hypers2v/parallel.hpp"

namespace hypers2v {

std::size_t WalkCorpus::token_count() const {
  std::size_t total = 0;
  for (const auto& w : walks) total += w.size();
  return total;
}

MultilayerWalker::MultilayerWalker(const MultilayerGraph& graph)
    : graph_(&graph), tables_(graph.num_layers()) {
  for (std::size_t k = 0; k < graph.num_layers(); ++k) {
    const auto& layer = graph.layer(k);
    tables_[k].resize(graph.num_nodes());
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
      if (layer.degree(u) > 0) {
        tables_[k][u] = AliasTable(layer.neighbor_weights(u));
      }
    }
  }
}

std::vector<double> MultilayerWalker::transition_probabilities(
    std::size_t k, NodeId u) const {
  const auto w = graph_->layer(k).neighbor_weights(u);
  double total = 0.0;
  for (double x : w) total += x;
  std::vector<double> p(w.begin(), w.end());
  for (double& x : p) x /= total;
  return p;
}

std::vector<NodeId> MultilayerWalker::walk(NodeId start, std::size_t length,
                                           double stay_probability,
                                           Rng& rng) const {
  std::vector<NodeId> tokens;
  if (length == 0) return tokens;
  tokens.reserve(length);
  tokens.push_back(start);
  if (graph_->num_layers() == 0) return tokens;

  NodeId u = start;
  std::size_t k = 0;
  while (tokens.size() < length) {
    const auto up = graph_->up_weight(k, u);
    const auto down = graph_->down_weight(k, u);
    const bool has_edges = graph_->layer(k).degree(u) > 0;
    const bool can_change = up.has_value() || down.has_value();
    if (!has_edges && !can_change) break;  // isolated everywhere

    const bool stay = !can_change || (has_edges && rng.uniform() < stay_probability);
    if (stay) {
      const auto& table = tables_[k][u];
      u = graph_->layer(k).neighbors(u)[table.sample(rng)];
      tokens.push_back(u);
      continue;
    }
    double p_up = 0.0;
    if (up && down) {
      p_up = *up / (*up + *down);
    } else if (up) {
      p_up = 1.0;
    }
    if (rng.uniform() < p_up) {
      ++k;
    } else {
      --k;
    }
  }
  return tokens;
}

WalkCorpus generate_walks(const MultilayerGraph& graph,
                          const WalkOptions& options) {
  if (!(options.stay_probability > 0.0 && options.stay_probability < 1.0)) {
    throw std::invalid_argument("stay probability must lie in (0, 1)");
  }
  if (graph.num_nodes() == 0) {
    throw std::invalid_argument("cannot walk an empty multilayer graph");
  }
  const MultilayerWalker walker(graph);
  const std::size_t n = graph.num_nodes();
  const std::size_t total = n * options.walks_per_node;

  WalkCorpus corpus;
  corpus.walks.resize(total);
  corpus.meta.resize(total);
  parallel_for(total, options.threads, [&](std::size_t index) {
    const std::size_t round = index / n;
    const auto start = static_cast<NodeId>(index % n);
    const std::uint64_t seed = derive_seed(options.seed, start, round);
    Rng rng(seed);
    corpus.walks[index] =
        walker.walk(start, options.walk_length, options.stay_probability, rng);
    corpus.meta[index] = {start, round, seed};
  });
  return corpus;
}

void write_corpus(const WalkCorpus& corpus, const NodeLabelMap& labels,
                  std::ostream& out) {
  for (const auto& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i) out << ' ';
      out << labels.label(walk[i]);
    }
    out << '\n';
  }
}

}  // namespace hypers2v

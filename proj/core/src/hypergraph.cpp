#include "hypers2v/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "hypers2v/errors.hpp"

namespace hypers2v {

NodeId NodeLabelMap::intern(std::string_view label) {
  if (auto it = ids_.find(std::string(label)); it != ids_.end()) {
    return it->second;
  }
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.emplace_back(label);
  ids_.emplace(labels_.back(), id);
  return id;
}

std::optional<NodeId> NodeLabelMap::find(std::string_view label) const {
  if (auto it = ids_.find(std::string(label)); it != ids_.end()) {
    return it->second;
  }
  return std::nullopt;
}

const std::string& NodeLabelMap::label(NodeId id) const {
  if (id >= labels_.size()) {
    throw std::out_of_range("node id " + std::to_string(id) + " out of range");
  }
  return labels_[id];
}

NodeLabelMap NodeLabelMap::numbered(std::size_t n) {
  NodeLabelMap map;
  for (std::size_t i = 0; i < n; ++i) map.intern(std::to_string(i));
  return map;
}

Hypergraph::Hypergraph(NodeLabelMap labels,
                       std::vector<std::vector<NodeId>> edges, bool dedupe)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  std::set<std::vector<NodeId>> seen;
  std::vector<std::size_t> degree(n, 0);

  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& members = edges[i];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.size() < 2) {
      throw ValidationError("hyperedge " + std::to_string(i) +
                            " has fewer than two distinct members");
    }
    if (members.back() >= n) {
      throw ValidationError("hyperedge " + std::to_string(i) +
                            " references unknown node id " +
                            std::to_string(members.back()));
    }
    if (dedupe && !seen.insert(members).second) continue;
    for (NodeId v : members) ++degree[v];
    edge_members_.insert(edge_members_.end(), members.begin(), members.end());
    edge_offsets_.push_back(edge_members_.size());
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 0) {
      throw ValidationError("node '" + labels_.label(static_cast<NodeId>(v)) +
                            "' belongs to no hyperedge");
    }
  }

  node_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    node_offsets_[v + 1] = node_offsets_[v] + degree[v];
  }
  node_edges_.resize(node_offsets_[n]);
  std::vector<std::size_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (NodeId v : edge(e)) node_edges_[cursor[v]++] = e;
  }
}

Hypergraph Hypergraph::from_labels(
    const std::vector<std::vector<std::string>>& edges, bool dedupe) {
  NodeLabelMap labels;
  std::vector<std::vector<NodeId>> ids;
  ids.reserve(edges.size());
  for (const auto& edge : edges) {
    auto& row = ids.emplace_back();
    row.reserve(edge.size());
    for (const auto& label : edge) row.push_back(labels.intern(label));
  }
  return Hypergraph(std::move(labels), std::move(ids), dedupe);
}

std::span<const NodeId> Hypergraph::edge(EdgeId e) const {
  if (e >= num_edges()) {
    throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
  }
  return {edge_members_.data() + edge_offsets_[e],
          edge_offsets_[e + 1] - edge_offsets_[e]};
}

std::span<const EdgeId> Hypergraph::incident_edges(NodeId v) const {
  if (v >= num_nodes()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  return {node_edges_.data() + node_offsets_[v],
          node_offsets_[v + 1] - node_offsets_[v]};
}

std::size_t Hypergraph::degree(NodeId v) const {
  return incident_edges(v).size();
}

std::size_t Hypergraph::max_degree() const {
  std::size_t best = 0;
  for (NodeId v = 0; v < num_nodes(); ++v) best = std::max(best, degree(v));
  return best;
}

std::size_t Hypergraph::max_edge_size() const {
  std::size_t best = 0;
  for (EdgeId e = 0; e < num_edges(); ++e) best = std::max(best, edge_size(e));
  return best;
}

SimpleGraph::SimpleGraph(std::size_t num_nodes,
                         std::vector<std::pair<NodeId, NodeId>> edges) {
  std::vector<std::size_t> degree(num_nodes, 0);
  for (auto& [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes || u == v) {
      throw std::invalid_argument("invalid simple-graph edge");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(num_nodes + 1, 0);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    offsets_[v + 1] = offsets_[v] + degree[v];
  }
  targets_.resize(offsets_[num_nodes]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges) {
    targets_[cursor[u]++] = v;
    targets_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    std::sort(targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              targets_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }
}

std::span<const NodeId> SimpleGraph::neighbors(NodeId v) const {
  if (v >= num_nodes()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool SimpleGraph::adjacent(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> SimpleGraph::edge_list() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

SimpleGraph clique_expansion(const Hypergraph& g) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto members = g.edge(e);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        pairs.emplace_back(members[i], members[j]);
      }
    }
  }
  return SimpleGraph(g.num_nodes(), std::move(pairs));
}

std::vector<std::vector<NodeId>> hop_shells(const SimpleGraph& adjacency,
                                            NodeId source,
                                            std::size_t max_hop) {
  const std::size_t n = adjacency.num_nodes();
  if (source >= n) throw std::out_of_range("source node out of range");
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::vector<NodeId>> shells{{source}};
  visited[source] = 1;
  while (shells.size() <= max_hop) {
    std::vector<NodeId> next;
    for (NodeId u : shells.back()) {
      for (NodeId w : adjacency.neighbors(u)) {
        if (!visited[w]) {
          visited[w] = 1;
          next.push_back(w);
        }
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    shells.push_back(std::move(next));
  }
  return shells;
}

std::vector<NodeId> k_hop_neighbors(const Hypergraph& g, NodeId v,
                                    std::size_t k) {
  if (k == 0) throw std::invalid_argument("k_hop_neighbors requires k >= 1");
  if (v >= g.num_nodes()) throw std::out_of_range("node id out of range");
  auto shells = hop_shells(clique_expansion(g), v, k);
  if (shells.size() <= k) return {};
  return shells[k];
}

std::vector<std::size_t> connected_components(const Hypergraph& g) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> component(g.num_nodes(), kUnset);
  std::vector<std::uint8_t> edge_seen(g.num_edges(), 0);
  std::size_t next = 0;
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < g.num_nodes(); ++start) {
    if (component[start] != kUnset) continue;
    component[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident_edges(u)) {
        if (edge_seen[e]) continue;
        edge_seen[e] = 1;
        for (NodeId w : g.edge(e)) {
          if (component[w] == kUnset) {
            component[w] = next;
            stack.push_back(w);
          }
        }
      }
    }
    ++next;
  }
  return component;
}

Hypergraph largest_component(const Hypergraph& g) {
  auto component = connected_components(g);
  std::map<std::size_t, std::size_t> sizes;
  for (auto c : component) ++sizes[c];
  std::size_t best = 0;
  std::size_t best_size = 0;
  for (auto [c, size] : sizes) {
    if (size > best_size) {
      best = c;
      best_size = size;
    }
  }
  NodeLabelMap labels;
  std::vector<std::vector<NodeId>> edges;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto members = g.edge(e);
    if (component[members.front()] != best) continue;
    auto& row = edges.emplace_back();
    for (NodeId v : members) row.push_back(labels.intern(g.label(v)));
  }
  return Hypergraph(std::move(labels), std::move(edges));
}

}  // namespace hypers2v

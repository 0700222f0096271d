#include "hypers2v/toygen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "hypers2v/alias_table.hpp"
#include "hypers2v/rng.hpp"

namespace hypers2v {

std::string_view to_string(ToyTopology topology) {
  switch (topology) {
    case ToyTopology::kStar: return "star";
    case ToyTopology::kCircle: return "circle";
    case ToyTopology::kMesh: return "mesh";
    case ToyTopology::kTower: return "tower";
    case ToyTopology::kTwin: return "twin";
  }
  return "unknown";
}

ToyTopology parse_topology(std::string_view name) {
  for (auto t : {ToyTopology::kStar, ToyTopology::kCircle, ToyTopology::kMesh,
                 ToyTopology::kTower, ToyTopology::kTwin}) {
    if (to_string(t) == name) return t;
  }
  throw std::invalid_argument("unknown toy topology '" + std::string(name) + "'");
}

ToySpec ToySpec::preset(ToyTopology topology) {
  ToySpec spec;
  spec.topology = topology;
  if (topology == ToyTopology::kTwin) {
    spec.twin.base = ToyTopology::kStar;
    spec.star.spoke_sizes = {3, 3, 4};
  }
  return spec;
}

namespace {

using LabelEdges = std::vector<std::vector<std::string>>;

LabelEdges star_edges(const StarParams& p) {
  if (p.spoke_sizes.empty()) throw std::invalid_argument("star needs spokes");
  LabelEdges edges;
  for (std::size_t i = 0; i < p.spoke_sizes.size(); ++i) {
    if (p.spoke_sizes[i] < 2) throw std::invalid_argument("spoke size must be >= 2");
    auto& e = edges.emplace_back();
    e.push_back("hub");
    for (std::uint32_t j = 1; j < p.spoke_sizes[i]; ++j) {
      e.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return edges;
}

LabelEdges circle_edges(const CircleParams& p) {
  const std::size_t m = p.edge_sizes.size();
  if (m < 3) throw std::invalid_argument("circle needs at least 3 edges");
  LabelEdges edges;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.edge_sizes[i] < 2) throw std::invalid_argument("edge size must be >= 2");
    auto& e = edges.emplace_back();
    e.push_back("c" + std::to_string(i));
    e.push_back("c" + std::to_string((i + 1) % m));
    for (std::uint32_t j = 2; j < p.edge_sizes[i]; ++j) {
      e.push_back("m" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  return edges;
}

LabelEdges mesh_edges(const MeshParams& p) {
  if (p.block < 1 || p.rows < p.block || p.cols < p.block ||
      p.block * p.block < 2) {
    throw std::invalid_argument("mesh: need rows, cols >= block and block^2 >= 2");
  }
  LabelEdges edges;
  for (std::size_t r = 0; r + p.block <= p.rows; ++r) {
    for (std::size_t c = 0; c + p.block <= p.cols; ++c) {
      auto& e = edges.emplace_back();
      for (std::size_t i = 0; i < p.block; ++i) {
        for (std::size_t j = 0; j < p.block; ++j) {
          e.push_back("r" + std::to_string(r + i) + "c" + std::to_string(c + j));
        }
      }
    }
  }
  return edges;
}

LabelEdges tower_edges(const TowerParams& p) {
  if (p.floors < 1 || p.width < 2) {
    throw std::invalid_argument("tower: need floors >= 1 and width >= 2");
  }
  auto node = [](std::size_t f, std::size_t j) {
    return "f" + std::to_string(f) + "w" + std::to_string(j);
  };
  LabelEdges edges;
  for (std::size_t f = 0; f < p.floors; ++f) {
    auto& e = edges.emplace_back();
    for (std::size_t j = 0; j < p.width; ++j) e.push_back(node(f, j));
  }
  for (std::size_t f = 0; f + 1 < p.floors; ++f) {
    for (std::size_t j = 0; j < p.width; ++j) {
      edges.push_back({node(f, j), node(f + 1, j)});
    }
  }
  return edges;
}

LabelEdges topology_edges(const ToySpec& spec, ToyTopology topology) {
  switch (topology) {
    case ToyTopology::kStar: return star_edges(spec.star);
    case ToyTopology::kCircle: return circle_edges(spec.circle);
    case ToyTopology::kMesh: return mesh_edges(spec.mesh);
    case ToyTopology::kTower: return tower_edges(spec.tower);
    case ToyTopology::kTwin: {
      if (spec.twin.base == ToyTopology::kTwin) {
        throw std::invalid_argument("twin base must not be a twin");
      }
      LabelEdges base = topology_edges(spec, spec.twin.base);
      LabelEdges edges;
      for (const char* prefix : {"A_", "B_"}) {
        for (const auto& e : base) {
          auto& copy = edges.emplace_back();
          for (const auto& label : e) copy.push_back(prefix + label);
        }
      }
      return edges;
    }
  }
  throw std::invalid_argument("unknown topology");
}

// Color refinement on the node/hyperedge incidence structure.
std::vector<std::size_t> refine_colors(const Hypergraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> node_color(n, 0);
  std::vector<std::size_t> edge_color(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) edge_color[e] = g.edge_size(e);
  std::size_t classes = 1;
  while (true) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (NodeId v = 0; v < n; ++v) {
      std::vector<std::size_t> around;
      for (EdgeId e : g.incident_edges(v)) around.push_back(edge_color[e]);
      std::sort(around.begin(), around.end());
      next[v] = ids.try_emplace({node_color[v], std::move(around)}, ids.size())
                    .first->second;
    }
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> edge_ids;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      std::vector<std::size_t> inside;
      for (NodeId v : g.edge(e)) inside.push_back(next[v]);
      std::sort(inside.begin(), inside.end());
      edge_color[e] = edge_ids.try_emplace({edge_color[e], std::move(inside)},
                                           edge_ids.size())
                          .first->second;
    }
    node_color = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return node_color;
}

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Hypergraph& g)
      : g_(g), colors_(refine_colors(g)), adjacency_(clique_expansion(g)) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      auto m = g.edge(e);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) ++shared_[{m[i], m[j]}];
      }
    }
  }

  const std::vector<std::size_t>& colors() const { return colors_; }

  std::optional<std::vector<NodeId>> find(NodeId from, NodeId to) {
    const std::size_t n = g_.num_nodes();
    if (from >= n || to >= n) throw std::out_of_range("node id out of range");
    if (colors_[from] != colors_[to]) return std::nullopt;

    // Breadth-first order from `from`, then the remaining components.
    order_.clear();
    std::vector<std::uint8_t> seen(n, 0);
    auto bfs = [&](NodeId s) {
      std::size_t head = order_.size();
      order_.push_back(s);
      seen[s] = 1;
      while (head < order_.size()) {
        NodeId u = order_[head++];
        for (NodeId w : adjacency_.neighbors(u)) {
          if (!seen[w]) {
            seen[w] = 1;
            order_.push_back(w);
          }
        }
      }
    };
    bfs(from);
    for (NodeId v = 0; v < n; ++v) {
      if (!seen[v]) bfs(v);
    }

    perm_.assign(n, kUnset);
    used_.assign(n, 0);
    perm_[from] = to;
    used_[to] = 1;
    if (extend(1)) return perm_;
    return std::nullopt;
  }

 private:
  static constexpr NodeId kUnset = static_cast<NodeId>(-1);

  std::size_t shared(NodeId a, NodeId b) const {
    if (a == b) return g_.degree(a);
    if (a > b) std::swap(a, b);
    auto it = shared_.find({a, b});
    return it == shared_.end() ? 0 : it->second;
  }

  bool consistent(NodeId w, NodeId x, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const NodeId y = order_[i];
      if (shared(w, y) != shared(x, perm_[y])) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return is_automorphism(g_, perm_);
    const NodeId w = order_[depth];
    for (NodeId x = 0; x < g_.num_nodes(); ++x) {
      if (used_[x] || colors_[x] != colors_[w]) continue;
      if (!consistent(w, x, depth)) continue;
      perm_[w] = x;
      used_[x] = 1;
      if (extend(depth + 1)) return true;
      perm_[w] = kUnset;
      used_[x] = 0;
    }
    return false;
  }

  const Hypergraph& g_;
  std::vector<std::size_t> colors_;
  SimpleGraph adjacency_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> shared_;
  std::vector<NodeId> order_;
  std::vector<NodeId> perm_;
  std::vector<std::uint8_t> used_;
};

}  // namespace

bool is_automorphism(const Hypergraph& g, std::span<const NodeId> perm) {
  const std::size_t n = g.num_nodes();
  if (perm.size() != n) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (NodeId x : perm) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  std::multiset<std::vector<NodeId>> original;
  std::multiset<std::vector<NodeId>> mapped;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto m = g.edge(e);
    original.emplace(m.begin(), m.end());
    std::vector<NodeId> image;
    for (NodeId v : m) image.push_back(perm[v]);
    std::sort(image.begin(), image.end());
    mapped.insert(std::move(image));
  }
  return original == mapped;
}

std::optional<std::vector<NodeId>> find_automorphism(const Hypergraph& g,
                                                     NodeId from, NodeId to) {
  AutomorphismSearch search(g);
  return search.find(from, to);
}

std::vector<std::size_t> automorphism_classes(const Hypergraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  AutomorphismSearch search(g);
  const auto& colors = search.colors();
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (colors[u] != colors[v] || root(u) == root(v)) continue;
      if (auto perm = search.find(u, v)) {
        for (NodeId x = 0; x < n; ++x) unite(x, (*perm)[x]);
      }
    }
  }
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> out(n);
  for (NodeId v = 0; v < n; ++v) {
    out[v] = renumber.try_emplace(root(v), renumber.size()).first->second;
  }
  return out;
}

ToyNetwork generate_toy(const ToySpec& spec, std::uint64_t seed) {
  LabelEdges edges = topology_edges(spec, spec.topology);
  if (seed != 0) {
    Rng rng(derive_seed(seed, 0x746f79 /* "toy" */));
    rng.shuffle(edges.begin(), edges.end());
    for (auto& e : edges) rng.shuffle(e.begin(), e.end());
  }
  ToyNetwork toy;
  toy.graph = Hypergraph::from_labels(edges);
  toy.color = automorphism_classes(toy.graph);
  toy.num_colors =
      toy.color.empty() ? 0 : *std::max_element(toy.color.begin(), toy.color.end()) + 1;
  return toy;
}

void write_colors(const ToyNetwork& toy, std::ostream& out) {
  for (NodeId v = 0; v < toy.graph.num_nodes(); ++v) {
    out << toy.graph.label(v) << ' ' << toy.color[v] << '\n';
  }
}

Hypergraph coauthorship_network(const CoauthorParams& p, std::uint64_t seed) {
  if (p.authors < 2 || p.papers == 0 || p.communities == 0 ||
      p.min_size < 2 || p.max_size < p.min_size) {
    throw std::invalid_argument("invalid co-authorship parameters");
  }
  Rng rng(derive_seed(seed, 0x636f61 /* "coa" */));
  std::vector<std::vector<NodeId>> community(p.communities);
  for (NodeId a = 0; a < p.authors; ++a) {
    community[rng.below(p.communities)].push_back(a);
  }
  std::erase_if(community, [](const auto& c) { return c.size() < 2; });

  std::vector<double> size_weight;
  for (std::uint32_t s = p.min_size; s <= p.max_size; ++s) {
    size_weight.push_back(std::pow(p.size_decay, s - p.min_size));
  }
  const AliasTable size_table(size_weight);

  std::vector<double> activity(p.authors, 1.0);
  auto pick_weighted = [&](std::span<const NodeId> pool) {
    double total = 0.0;
    for (NodeId a : pool) total += activity[a];
    double target = rng.uniform() * total;
    for (NodeId a : pool) {
      target -= activity[a];
      if (target < 0) return a;
    }
    return pool.back();
  };
  std::vector<NodeId> everyone(p.authors);
  std::iota(everyone.begin(), everyone.end(), 0);

  std::vector<std::vector<std::string>> edges;
  for (std::size_t paper = 0; paper < p.papers; ++paper) {
    const auto& home = community[rng.below(community.size())];
    const std::size_t size = std::min<std::size_t>(
        p.min_size + size_table.sample(rng), home.size());
    std::set<NodeId> team;
    std::size_t guard = 0;
    while (team.size() < size && guard++ < 1000) {
      const bool outside = !team.empty() && rng.uniform() < p.cross_community;
      team.insert(outside ? pick_weighted(everyone) : pick_weighted(home));
    }
    if (team.size() < 2) continue;
    auto& e = edges.emplace_back();
    for (NodeId a : team) {
      activity[a] += 1.0;
      e.push_back("a" + std::to_string(a));
    }
  }
  return largest_component(Hypergraph::from_labels(edges, /*dedupe=*/true));
}

}  // namespace hypers2v

#include "hypers2v/layer_distances.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "hypers2v/errors.hpp"
#include "hypers2v/parallel.hpp"

namespace hypers2v {

LayerDistances::LayerDistances(std::size_t num_nodes, std::size_t k_max)
    : num_nodes_(num_nodes),
      k_max_(k_max),
      pair_count_(num_nodes < 2 ? 0 : num_nodes * (num_nodes - 1) / 2),
      values_(k_max + 1, std::vector<double>(pair_count_, 0.0)),
      valid_(k_max + 1, std::vector<std::uint8_t>(pair_count_, 0)) {}

std::size_t LayerDistances::pair_index(NodeId u, NodeId v) const {
  if (u == v || u >= num_nodes_ || v >= num_nodes_) {
    throw std::out_of_range("invalid node pair");
  }
  if (u > v) std::swap(u, v);
  // Rows 0..u-1 contribute (n-1) + (n-2) + ... + (n-u) entries.
  const std::size_t n = num_nodes_;
  const std::size_t row_start = u * (2 * n - u - 1) / 2;
  return row_start + (v - u - 1);
}

void LayerDistances::check_layer(std::size_t k) const {
  if (k > k_max_) throw std::out_of_range("layer index out of range");
}

bool LayerDistances::valid(std::size_t k, NodeId u, NodeId v) const {
  check_layer(k);
  if (u == v) {
    if (u >= num_nodes_) throw std::out_of_range("node id out of range");
    return true;
  }
  return valid_[k][pair_index(u, v)] != 0;
}

std::optional<double> LayerDistances::at(std::size_t k, NodeId u,
                                         NodeId v) const {
  if (!valid(k, u, v)) return std::nullopt;
  if (u == v) return 0.0;
  return values_[k][pair_index(u, v)];
}

std::size_t LayerDistances::deepest_layer(NodeId u, NodeId v) const {
  for (std::size_t k = k_max_ + 1; k-- > 0;) {
    if (valid(k, u, v)) return k;
  }
  throw std::logic_error("pair is not valid at any layer");
}

double LayerDistances::deepest(NodeId u, NodeId v) const {
  return *at(deepest_layer(u, v), u, v);
}

void LayerDistances::set(std::size_t k, NodeId u, NodeId v, double value) {
  check_layer(k);
  set_by_index(k, pair_index(u, v), value);
}

void LayerDistances::set_by_index(std::size_t k, std::size_t pair,
                                  double value) {
  values_[k][pair] = value;
  valid_[k][pair] = 1;
}

std::span<const double> LayerDistances::layer_values(std::size_t k) const {
  check_layer(k);
  return values_[k];
}

std::span<const std::uint8_t> LayerDistances::layer_validity(
    std::size_t k) const {
  check_layer(k);
  return valid_[k];
}

namespace {

constexpr std::array<char, 8> kMagic{'H', 'S', '2', 'V', 'D', 'I', 'S', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

template <class T>
void write_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), sizeof(T))) {
    throw DataError("truncated distance cache");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void LayerDistances::save(std::ostream& out) const {
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint32_t>(out, kFormatVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(k_max_));
  write_le<std::uint64_t>(out, num_nodes_);
  for (std::size_t k = 0; k <= k_max_; ++k) {
    std::vector<char> bitmap((pair_count_ + 7) / 8, 0);
    for (std::size_t p = 0; p < pair_count_; ++p) {
      if (valid_[k][p]) bitmap[p / 8] = static_cast<char>(bitmap[p / 8] | (1 << (p % 8)));
    }
    out.write(bitmap.data(), static_cast<std::streamsize>(bitmap.size()));
    for (std::size_t p = 0; p < pair_count_; ++p) {
      write_le<double>(out, values_[k][p]);
    }
  }
  if (!out) throw DataError("failed to write distance cache");
}

LayerDistances LayerDistances::load(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("not a distance cache (bad magic)");
  }
  const auto version = read_le<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw DataError("unsupported distance cache version " +
                    std::to_string(version));
  }
  const auto k_max = read_le<std::uint32_t>(in);
  const auto n = read_le<std::uint64_t>(in);
  LayerDistances out(static_cast<std::size_t>(n), k_max);
  for (std::size_t k = 0; k <= out.k_max_; ++k) {
    std::vector<char> bitmap((out.pair_count_ + 7) / 8);
    if (!in.read(bitmap.data(), static_cast<std::streamsize>(bitmap.size()))) {
      throw DataError("truncated distance cache");
    }
    for (std::size_t p = 0; p < out.pair_count_; ++p) {
      out.valid_[k][p] = (static_cast<unsigned char>(bitmap[p / 8]) >> (p % 8)) & 1u;
      out.values_[k][p] = read_le<double>(in);
    }
  }
  return out;
}

namespace {

// Dense ids for distinct values, with a rank giving their canonical order.
template <class T, class Before>
struct Interner {
  std::vector<T> values;
  std::vector<std::uint32_t> rank;  // rank[id]: position in canonical order

  std::vector<std::uint32_t> intern_all(const std::vector<T>& items,
                                        Before before) {
    std::map<T, std::uint32_t> ids;
    std::vector<std::uint32_t> out;
    out.reserve(items.size());
    for (const auto& item : items) {
      auto [it, inserted] =
          ids.emplace(item, static_cast<std::uint32_t>(values.size()));
      if (inserted) values.push_back(item);
      out.push_back(it->second);
    }
    std::vector<std::uint32_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return before(values[a], values[b]);
    });
    rank.assign(values.size(), 0);
    for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
    return out;
  }
};

// Symmetric dense matrix of base distances between distinct 0-hop
// descriptors (CHDs or raw HDs).
struct BaseTable {
  std::size_t size = 0;
  std::vector<double> cells;
  double operator()(std::uint32_t a, std::uint32_t b) const {
    return cells[static_cast<std::size_t>(a) * size + b];
  }
};

template <class T, class Dist>
BaseTable base_table(const std::vector<T>& values, std::size_t threads,
                     Dist&& dist) {
  BaseTable t;
  t.size = values.size();
  t.cells.assign(t.size * t.size, 0.0);
  parallel_for(t.size, threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < t.size; ++j) {
      const double d = dist(values[i], values[j]);
      t.cells[i * t.size + j] = d;
      t.cells[j * t.size + i] = d;
    }
  });
  return t;
}

// One k-hop descriptor: base ids in canonical order with frequencies
// (frequency is always 1 for the uncollapsed mode, where repeats are kept).
using HopSequence = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Structure-of-arrays copy of a hop sequence for the DTW kernel.
struct PackedSequence {
  std::vector<std::uint32_t> ids;
  std::vector<double> freqs;
};

// dtw_indexed specialised to base-table costs, evaluated by anti-diagonals:
// cells on one diagonal are independent, which removes the serial min/add
// chain of the row-by-row recurrence. Each cell still computes
// cost + min(up, left, diag), so results match dtw_indexed bit for bit.
double sequence_dtw(const PackedSequence& a, const PackedSequence& b,
                    const BaseTable& base, bool scale_by_frequency,
                    std::vector<double>& buffer) {
  const std::size_t n = a.ids.size();
  const std::size_t m = b.ids.size();
  buffer.resize(3 * n);
  double* prev2 = buffer.data();
  double* prev1 = prev2 + n;
  double* cur = prev1 + n;
  auto cost = [&](std::size_t i, std::size_t j) {
    const double c = base.cells[static_cast<std::size_t>(a.ids[i]) * base.size + b.ids[j]];
    return scale_by_frequency ? std::max(a.freqs[i], b.freqs[j]) * c : c;
  };
  for (std::size_t d = 0; d + 1 < n + m; ++d) {
    const std::size_t lo = d < m ? 0 : d - (m - 1);
    const std::size_t hi = std::min(n - 1, d);
    std::size_t i = lo;
    if (i == 0) {
      cur[0] = d == 0 ? cost(0, 0) : cost(0, d) + prev1[0];
      ++i;
    }
    const std::size_t interior_end = d < n ? hi : hi + 1;  // skip j == 0
    for (; i < interior_end; ++i) {
      const double best = std::min(std::min(prev1[i - 1], prev1[i]), prev2[i - 1]);
      cur[i] = cost(i, d - i) + best;
    }
    if (d < n && d > 0) cur[d] = cost(d, 0) + prev1[d - 1];
    std::swap(prev2, prev1);
    std::swap(prev1, cur);
  }
  return prev1[n - 1];
}

// Computes D^k over distinct hop sequences and accumulates into layer k.
void accumulate_layer(LayerDistances& out, std::size_t k,
                      const std::vector<std::optional<HopSequence>>& per_node,
                      const BaseTable& base, bool scale_by_frequency,
                      std::size_t threads) {
  const std::size_t n = per_node.size();
  std::map<HopSequence, std::uint32_t> ids;
  std::vector<PackedSequence> distinct;
  std::vector<std::vector<NodeId>> members;
  for (NodeId v = 0; v < n; ++v) {
    if (!per_node[v]) continue;
    auto [it, inserted] =
        ids.emplace(*per_node[v], static_cast<std::uint32_t>(distinct.size()));
    if (inserted) {
      auto& packed = distinct.emplace_back();
      for (const auto& [id, freq] : *per_node[v]) {
        packed.ids.push_back(id);
        packed.freqs.push_back(static_cast<double>(freq));
      }
      members.emplace_back();
    }
    members[it->second].push_back(v);
  }

  // Each (i, j) group pair writes a disjoint set of node pairs.
  parallel_for(distinct.size(), threads, [&](std::size_t i) {
    thread_local std::vector<double> buffer;
    for (std::size_t j = i; j < distinct.size(); ++j) {
      const double d =
          i == j ? 0.0
                 : sequence_dtw(distinct[i], distinct[j], base, scale_by_frequency,
                                buffer);
      for (NodeId u : members[i]) {
        for (NodeId v : members[j]) {
          if (u == v) continue;
          if (i == j && u > v) continue;
          const std::size_t p = out.pair_index(u, v);
          const double previous = out.layer_values(k - 1)[p];
          out.set_by_index(k, p, previous + d);
        }
      }
    }
  });
}

}  // namespace

LayerDistances cumulative_distances(const Hypergraph& g,
                                    const DistanceOptions& options) {
  const std::size_t n = g.num_nodes();
  const std::size_t k_max = options.k_max;
  const unsigned exponent = options.exponent;
  if (exponent == 0) throw std::invalid_argument("exponent must be >= 1");
  LayerDistances out(n, k_max);
  if (n == 0) return out;

  const SimpleGraph adjacency = clique_expansion(g);
  std::vector<std::vector<std::vector<NodeId>>> shells(n);
  parallel_for(n, options.threads, [&](std::size_t v) {
    shells[v] = hop_shells(adjacency, static_cast<NodeId>(v), k_max);
  });

  std::vector<HyperDegree> hd(n);
  for (NodeId v = 0; v < n; ++v) hd[v] = hyper_degree(g, v);

  const bool collapsed = options.mode == DistanceMode::kCollapsed;
  std::vector<std::uint32_t> base_id;
  std::vector<std::uint32_t> base_rank;
  BaseTable base;
  if (collapsed) {
    std::vector<CollapsedHyperDegree> chd(n);
    for (NodeId v = 0; v < n; ++v) chd[v] = collapse(hd[v]);
    Interner<CollapsedHyperDegree, decltype(&chd_canonical_before)> interner;
    base_id = interner.intern_all(chd, &chd_canonical_before);
    base_rank = interner.rank;
    base = base_table(interner.values, options.threads,
                      [exponent](const auto& a, const auto& b) {
                        return d0(a, b, exponent);
                      });
  } else {
    auto before = [](const HyperDegree& a, const HyperDegree& b) {
      return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    };
    Interner<HyperDegree, decltype(before)> interner;
    base_id = interner.intern_all(hd, before);
    base_rank = interner.rank;
    base = base_table(interner.values, options.threads,
                      [exponent](const auto& a, const auto& b) {
                        return d0_uncollapsed(a, b, exponent);
                      });
  }

  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      out.set(0, u, v, base(base_id[u], base_id[v]));
    }
  }

  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<std::optional<HopSequence>> per_node(n);
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (shells[v].size() <= k) continue;
      any = true;
      std::vector<std::uint32_t> ids;
      ids.reserve(shells[v][k].size());
      for (NodeId w : shells[v][k]) ids.push_back(base_id[w]);
      std::sort(ids.begin(), ids.end(), [&](auto a, auto b) {
        return base_rank[a] < base_rank[b];
      });
      HopSequence seq;
      for (auto id : ids) {
        if (collapsed && !seq.empty() && seq.back().first == id) {
          ++seq.back().second;
        } else {
          seq.emplace_back(id, 1u);
        }
      }
      per_node[v] = std::move(seq);
    }
    if (!any) break;
    accumulate_layer(out, k, per_node, base, collapsed, options.threads);
  }
  return out;
}

}  // namespace hypers2v

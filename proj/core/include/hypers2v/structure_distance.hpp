#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypers2v/hypergraph.hpp"

namespace hypers2v {

/// Sizes of a node's incident hyperedges, sorted in descending order.
using HyperDegree = std::vector<std::uint32_t>;

struct SizeCount {
  std::uint32_t size = 0;
  std::uint32_t freq = 0;
  auto operator<=>(const SizeCount&) const = default;
};

/// Hyper-degree collapsed into (size, frequency) runs, sizes strictly
/// decreasing.
using CollapsedHyperDegree = std::vector<SizeCount>;

struct SignatureEntry {
  CollapsedHyperDegree chd;
  std::uint32_t freq = 0;
  bool operator==(const SignatureEntry&) const = default;
};

/// Frequency-collapsed multiset of the CHDs of a node's k-hop neighbors,
/// in canonical order (see `chd_canonical_before`).
using NeighborhoodSignature = std::vector<SignatureEntry>;

inline constexpr unsigned kDefaultExponent = 2;

HyperDegree hyper_degree(const Hypergraph& g, NodeId v);
CollapsedHyperDegree collapse(std::span<const std::uint32_t> hd);
HyperDegree expand(const CollapsedHyperDegree& chd);

/// 1 / (max_size - size + 1): 1 for the largest size, shrinking as sizes drop.
double positional_bias(std::uint32_t max_size, std::uint32_t size);

struct MpdElement {
  std::uint32_t size = 0;
  double bias = 1.0;
};

struct CmpdElement {
  std::uint32_t size = 0;
  std::uint32_t freq = 1;
  double bias = 1.0;
};

/// Magnitude-position distance between two hyper-degree elements:
/// exp(((1 - min/max)^n + |b_u - b_v|^n)^(1/n)) - 1.
double mpd(MpdElement u, MpdElement v, unsigned exponent = kDefaultExponent);

/// Collapsed variant: biases are divided by their run frequency and the
/// result is scaled by the larger frequency.
double cmpd(CmpdElement u, CmpdElement v, unsigned exponent = kDefaultExponent);

/// 0-hop distance over collapsed hyper-degrees (DTW with cmpd). Each side's
/// biases are computed against its own largest size.
double d0(const CollapsedHyperDegree& u, const CollapsedHyperDegree& v,
          unsigned exponent = kDefaultExponent);

/// Uncollapsed 0-hop distance (DTW with mpd over raw hyper-degrees).
double d0_uncollapsed(std::span<const std::uint32_t> u,
                      std::span<const std::uint32_t> v,
                      unsigned exponent = kDefaultExponent);

/// Canonical order used wherever a multiset of CHDs has to become a
/// sequence: descending lexicographic over the (size, freq) entry lists.
bool chd_canonical_before(const CollapsedHyperDegree& a,
                          const CollapsedHyperDegree& b);

/// Builds the canonical signature from the CHDs of the k-hop neighbors.
NeighborhoodSignature neighborhood_signature(
    std::span<const CollapsedHyperDegree> neighbor_chds);

/// max(f_a, f_b) * d0(chd_a, chd_b).
double cncmpd(const SignatureEntry& a, const SignatureEntry& b,
              unsigned exponent = kDefaultExponent);

/// k-hop distance (DTW with cncmpd). Empty when either signature is empty,
/// i.e. the pair is undefined at this hop.
std::optional<double> dk(const NeighborhoodSignature& u,
                         const NeighborhoodSignature& v,
                         unsigned exponent = kDefaultExponent);

/// Uncollapsed k-hop distance: DTW with `d0_uncollapsed` over the neighbors'
/// raw hyper-degrees, each list sorted descending-lexicographically.
std::optional<double> dk_uncollapsed(std::span<const HyperDegree> u,
                                     std::span<const HyperDegree> v,
                                     unsigned exponent = kDefaultExponent);

}  // namespace hypers2v

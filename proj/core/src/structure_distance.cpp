#include "hypers2v/structure_distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "hypers2v/dtw.hpp"

namespace hypers2v {
namespace {

double root_sum(double magnitude, double position, unsigned exponent) {
  if (exponent == 0) throw std::invalid_argument("exponent must be >= 1");
  if (exponent == 1) return magnitude + position;
  if (exponent == 2) return std::sqrt(magnitude * magnitude + position * position);
  const double n = static_cast<double>(exponent);
  return std::pow(std::pow(magnitude, n) + std::pow(position, n), 1.0 / n);
}

double magnitude_term(std::uint32_t a, std::uint32_t b) {
  const auto [lo, hi] = std::minmax(a, b);
  if (lo == hi) return 0.0;
  return 1.0 - static_cast<double>(lo) / static_cast<double>(hi);
}

std::vector<CmpdElement> cmpd_elements(const CollapsedHyperDegree& chd) {
  std::vector<CmpdElement> out;
  out.reserve(chd.size());
  const std::uint32_t top = chd.front().size;
  for (const auto& entry : chd) {
    out.push_back({entry.size, entry.freq, positional_bias(top, entry.size)});
  }
  return out;
}

std::vector<MpdElement> mpd_elements(std::span<const std::uint32_t> hd) {
  std::vector<MpdElement> out;
  out.reserve(hd.size());
  const std::uint32_t top = hd.front();
  for (auto s : hd) out.push_back({s, positional_bias(top, s)});
  return out;
}

}  // namespace

HyperDegree hyper_degree(const Hypergraph& g, NodeId v) {
  HyperDegree hd;
  auto edges = g.incident_edges(v);
  hd.reserve(edges.size());
  for (EdgeId e : edges) hd.push_back(static_cast<std::uint32_t>(g.edge_size(e)));
  std::sort(hd.begin(), hd.end(), std::greater<>());
  return hd;
}

CollapsedHyperDegree collapse(std::span<const std::uint32_t> hd) {
  CollapsedHyperDegree out;
  for (auto s : hd) {
    if (!out.empty() && out.back().size == s) {
      ++out.back().freq;
    } else {
      if (!out.empty() && out.back().size < s) {
        throw std::invalid_argument("hyper-degree must be sorted descending");
      }
      out.push_back({s, 1});
    }
  }
  return out;
}

HyperDegree expand(const CollapsedHyperDegree& chd) {
  HyperDegree out;
  for (const auto& entry : chd) out.insert(out.end(), entry.freq, entry.size);
  return out;
}

double positional_bias(std::uint32_t max_size, std::uint32_t size) {
  if (size > max_size) {
    throw std::invalid_argument("positional_bias: size exceeds the maximum");
  }
  return 1.0 / static_cast<double>(max_size - size + 1);
}

double mpd(MpdElement u, MpdElement v, unsigned exponent) {
  const double r = root_sum(magnitude_term(u.size, v.size),
                            std::abs(u.bias - v.bias), exponent);
  return std::expm1(r);
}

double cmpd(CmpdElement u, CmpdElement v, unsigned exponent) {
  const double bu = u.bias / static_cast<double>(u.freq);
  const double bv = v.bias / static_cast<double>(v.freq);
  const double r =
      root_sum(magnitude_term(u.size, v.size), std::abs(bu - bv), exponent);
  return static_cast<double>(std::max(u.freq, v.freq)) * std::expm1(r);
}

double d0(const CollapsedHyperDegree& u, const CollapsedHyperDegree& v,
          unsigned exponent) {
  if (u.empty() || v.empty()) {
    throw std::invalid_argument("d0: collapsed hyper-degrees must be non-empty");
  }
  const auto eu = cmpd_elements(u);
  const auto ev = cmpd_elements(v);
  return dtw(std::span<const CmpdElement>(eu), std::span<const CmpdElement>(ev),
             [exponent](const CmpdElement& a, const CmpdElement& b) {
               return cmpd(a, b, exponent);
             });
}

double d0_uncollapsed(std::span<const std::uint32_t> u,
                      std::span<const std::uint32_t> v, unsigned exponent) {
  if (u.empty() || v.empty()) {
    throw std::invalid_argument("d0: hyper-degrees must be non-empty");
  }
  const auto eu = mpd_elements(u);
  const auto ev = mpd_elements(v);
  return dtw(std::span<const MpdElement>(eu), std::span<const MpdElement>(ev),
             [exponent](const MpdElement& a, const MpdElement& b) {
               return mpd(a, b, exponent);
             });
}

bool chd_canonical_before(const CollapsedHyperDegree& a,
                          const CollapsedHyperDegree& b) {
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

NeighborhoodSignature neighborhood_signature(
    std::span<const CollapsedHyperDegree> neighbor_chds) {
  std::map<CollapsedHyperDegree, std::uint32_t> counts;
  for (const auto& chd : neighbor_chds) ++counts[chd];
  NeighborhoodSignature sig;
  sig.reserve(counts.size());
  // std::map iterates ascending; canonical order is descending.
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    sig.push_back({it->first, it->second});
  }
  return sig;
}

double cncmpd(const SignatureEntry& a, const SignatureEntry& b,
              unsigned exponent) {
  return static_cast<double>(std::max(a.freq, b.freq)) *
         d0(a.chd, b.chd, exponent);
}

std::optional<double> dk(const NeighborhoodSignature& u,
                         const NeighborhoodSignature& v, unsigned exponent) {
  if (u.empty() || v.empty()) return std::nullopt;
  return dtw(std::span<const SignatureEntry>(u),
             std::span<const SignatureEntry>(v),
             [exponent](const SignatureEntry& a, const SignatureEntry& b) {
               return cncmpd(a, b, exponent);
             });
}

std::optional<double> dk_uncollapsed(std::span<const HyperDegree> u,
                                     std::span<const HyperDegree> v,
                                     unsigned exponent) {
  if (u.empty() || v.empty()) return std::nullopt;
  return dtw(u, v, [exponent](const HyperDegree& a, const HyperDegree& b) {
    return d0_uncollapsed(a, b, exponent);
  });
}

}  // namespace hypers2v

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypers2v/rng.hpp"

namespace hypers2v {

/// Walker/Vose alias table: O(n) build, O(1) draws from a discrete
/// distribution given by non-negative weights.
class AliasTable {
 public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("alias table needs weights");
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("negative weight");
      total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("weights sum to zero");

    prob_.resize(n);
    alias_.resize(n);
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small;
    std::vector<std::uint32_t> large;
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = weights[i] * static_cast<double>(n) / total;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const auto s = small.back();
      small.pop_back();
      const auto l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = (scaled[l] + scaled[s]) - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (auto i : large) {
      prob_[i] = 1.0;
      alias_[i] = i;
    }
    for (auto i : small) {  // numerical leftovers
      prob_[i] = 1.0;
      alias_[i] = i;
    }
  }

  std::size_t size() const noexcept { return prob_.size(); }

  std::size_t sample(Rng& rng) const {
    const auto column = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[column] ? column : alias_[column];
  }

  /// Probability of outcome i implied by the table (for tests).
  double probability(std::size_t i) const {
    const double n = static_cast<double>(prob_.size());
    double p = prob_[i] / n;
    for (std::size_t c = 0; c < prob_.size(); ++c) {
      if (c != i && alias_[c] == i) p += (1.0 - prob_[c]) / n;
    }
    return p;
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace hypers2v

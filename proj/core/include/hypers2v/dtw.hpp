#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypers2v {

/// Exact dynamic time warping over an index-based cost. The alignment starts
/// at (0, 0), ends at (n-1, m-1) and advances by (1,0), (0,1) or (1,1); the
/// result is the minimum sum of cell costs along such a path.
template <class CostFn>
double dtw_indexed(std::size_t n, std::size_t m, CostFn&& cost) {
  if (n == 0 || m == 0) {
    throw std::invalid_argument("dtw: sequences must be non-empty");
  }
  std::vector<double> row(m);
  row[0] = cost(std::size_t{0}, std::size_t{0});
  for (std::size_t j = 1; j < m; ++j) {
    row[j] = row[j - 1] + cost(std::size_t{0}, j);
  }
  for (std::size_t i = 1; i < n; ++i) {
    double diag = row[0];
    row[0] += cost(i, std::size_t{0});
    for (std::size_t j = 1; j < m; ++j) {
      const double up = row[j];
      row[j] = cost(i, j) + std::min({up, row[j - 1], diag});
      diag = up;
    }
  }
  return row[m - 1];
}

template <class A, class B, class Dist>
double dtw(std::span<const A> a, std::span<const B> b, Dist&& dist) {
  return dtw_indexed(a.size(), b.size(), [&](std::size_t i, std::size_t j) {
    return dist(a[i], b[j]);
  });
}

}  // namespace hypers2v

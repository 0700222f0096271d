#include "hypers2v/evaluation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hypers2v/errors.hpp"
#include "hypers2v/log.hpp"
#include "hypers2v/rng.hpp"

namespace hypers2v {
namespace {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double rmse(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.empty() || predicted.size() != truth.size()) {
    throw std::invalid_argument("rmse: inputs must be non-empty and equal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = predicted[i] - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.empty() || scores.size() != labels.size()) {
    throw std::invalid_argument("auc: inputs must be non-empty and equal length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        positive_rank_sum += avg_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("auc: labels contain a single class");
  }
  const double p = static_cast<double>(positives);
  const double q = static_cast<double>(negatives);
  return (positive_rank_sum - p * (p + 1) / 2) / (p * q);
}

double adjusted_rand_index(std::span<const std::size_t> a,
                           std::span<const std::size_t> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("adjusted_rand_index: size mismatch");
  }
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> rows;
  std::map<std::size_t, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1;
    rows[a[i]] += 1;
    cols[b[i]] += 1;
  }
  auto choose2 = [](double x) { return x * (x - 1) / 2; };
  double index = 0;
  for (auto& [_, c] : table) index += choose2(c);
  double sum_rows = 0;
  for (auto& [_, c] : rows) sum_rows += choose2(c);
  double sum_cols = 0;
  for (auto& [_, c] : cols) sum_cols += choose2(c);
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = sum_rows * sum_cols / total;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  if (values.size() % 2) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

void EvalReport::write_key_values(std::ostream& out) const {
  out << "task=" << task << '\n'
      << "seed=" << seed << '\n'
      << "metric=" << metric << '\n'
      << "value=" << format_double(value) << '\n'
      << "train_count=" << train_count << '\n'
      << "test_count=" << test_count << '\n';
  for (const auto& [k, v] : params) out << k << '=' << v << '\n';
}

void EvalReport::write_csv_header(std::ostream& out) {
  out << "task,seed,metric,value,train_count,test_count,params\n";
}

void EvalReport::write_csv_row(std::ostream& out) const {
  out << task << ',' << seed << ',' << metric << ',' << format_double(value)
      << ',' << train_count << ',' << test_count << ',';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out << ';';
    out << params[i].first << '=' << params[i].second;
  }
  out << '\n';
}

std::vector<double> mean_pool(const EmbeddingMatrix& emb,
                              std::span<const NodeId> members) {
  if (members.empty()) throw std::invalid_argument("mean_pool: no members");
  std::vector<double> out(emb.dim(), 0.0);
  for (NodeId v : members) {
    if (v >= emb.rows()) throw std::out_of_range("mean_pool: node id out of range");
    auto row = emb.row(v);
    for (std::size_t d = 0; d < out.size(); ++d) out[d] += row[d];
  }
  for (double& x : out) x /= static_cast<double>(members.size());
  return out;
}

EmbeddingMatrix align_embedding(const LabeledEmbedding& embedding,
                                const NodeLabelMap& graph_labels) {
  EmbeddingMatrix out(graph_labels.size(), embedding.vectors.dim());
  std::vector<std::string> missing;
  for (NodeId v = 0; v < graph_labels.size(); ++v) {
    auto id = embedding.labels.find(graph_labels.label(v));
    if (!id) {
      missing.push_back(graph_labels.label(v));
      continue;
    }
    auto src = embedding.vectors.row(*id);
    std::copy(src.begin(), src.end(), out.row(v).begin());
  }
  if (!missing.empty()) {
    std::string msg = "embedding lacks " + std::to_string(missing.size()) +
                      " graph node(s):";
    for (const auto& m : missing) msg += " " + m;
    throw DataError(msg);
  }
  return out;
}

Split stratified_split(std::span<const std::uint64_t> strata,
                       double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must lie in (0, 1)");
  }
  const std::size_t n = strata.size();
  Split split;
  if (n < 2) {
    throw DataError("cannot split fewer than two items");
  }
  Rng rng(seed);
  std::vector<std::uint64_t> tiebreak(n);
  for (auto& t : tiebreak) t = rng.next();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (strata[a] != strata[b]) return strata[a] < strata[b];
    return tiebreak[a] < tiebreak[b];
  });

  auto test_count = static_cast<std::size_t>(
      std::llround((1.0 - train_fraction) * static_cast<double>(n)));
  test_count = std::clamp<std::size_t>(test_count, 1, n - 1);
  const double stride = static_cast<double>(n) / static_cast<double>(test_count);
  const double offset = rng.uniform();
  std::vector<std::uint8_t> is_test(n, 0);
  for (std::size_t i = 0; i < test_count; ++i) {
    auto pos = static_cast<std::size_t>((static_cast<double>(i) + offset) * stride);
    is_test[std::min(pos, n - 1)] = 1;
  }
  for (std::size_t p = 0; p < n; ++p) {
    (is_test[p] ? split.test : split.train).push_back(order[p]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

double LinearModel::predict(std::span<const double> x) const {
  double s = intercept;
  for (std::size_t d = 0; d < weights.size(); ++d) s += weights[d] * x[d];
  return s;
}

LinearModel fit_ridge(const FeatureRows& x, std::span<const double> y,
                      double lambda) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("fit_ridge: bad training data");
  }
  if (lambda < 0) throw std::invalid_argument("fit_ridge: lambda must be >= 0");
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto d = static_cast<Eigen::Index>(x.front().size());
  Eigen::MatrixXd a(n, d);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::RowVectorXd x_mean = a.colwise().mean();
  const double y_mean = b.mean();
  a.rowwise() -= x_mean;
  b.array() -= y_mean;

  Eigen::MatrixXd gram = a.transpose() * a;
  gram.diagonal().array() += lambda;
  Eigen::VectorXd w = gram.ldlt().solve(a.transpose() * b);
  if (!w.allFinite()) {
    // Singular system at lambda == 0: fall back to the minimum-norm solution.
    w = a.completeOrthogonalDecomposition().solve(b);
  }
  LinearModel model;
  model.weights.assign(w.data(), w.data() + w.size());
  model.intercept = y_mean - x_mean.dot(w);
  return model;
}

LinearModel fit_logistic(const FeatureRows& x, std::span<const int> labels,
                         const LogisticOptions& options) {
  if (x.empty() || x.size() != labels.size()) {
    throw std::invalid_argument("fit_logistic: bad training data");
  }
  const std::size_t n = x.size();
  const std::size_t d = x.front().size();
  std::vector<double> mean(d, 0.0);
  std::vector<double> scale(d, 0.0);
  for (const auto& row : x) {
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (const auto& row : x) {
    for (std::size_t j = 0; j < d; ++j) {
      scale[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
    }
  }
  for (double& s : scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 1e-12)) s = 1.0;
  }
  FeatureRows z(n, std::vector<double>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) z[i][j] = (x[i][j] - mean[j]) / scale[j];
  }

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  std::vector<double> grad(d);
  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = b;
      for (std::size_t j = 0; j < d; ++j) s += w[j] * z[i][j];
      const double err = sigmoid(s) - (labels[i] != 0 ? 1.0 : 0.0);
      for (std::size_t j = 0; j < d; ++j) grad[j] += err * z[i][j];
      grad_b += err;
    }
    for (std::size_t j = 0; j < d; ++j) {
      w[j] -= options.learning_rate *
              (grad[j] / static_cast<double>(n) + options.l2 * w[j]);
    }
    b -= options.learning_rate * grad_b / static_cast<double>(n);
  }

  LinearModel model;
  model.weights.resize(d);
  model.intercept = b;
  for (std::size_t j = 0; j < d; ++j) {
    model.weights[j] = w[j] / scale[j];
    model.intercept -= w[j] * mean[j] / scale[j];
  }
  return model;
}

EvalReport size_regression(const EmbeddingMatrix& emb, const Hypergraph& g,
                           const SizeRegressionOptions& options) {
  if (g.num_edges() < 5) {
    throw DataError("size regression needs at least 5 hyperedges");
  }
  if (emb.rows() != g.num_nodes()) {
    throw DataError("embedding rows do not match the graph's node count");
  }
  FeatureRows features;
  std::vector<double> sizes;
  std::vector<std::uint64_t> strata;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    features.push_back(mean_pool(emb, g.edge(e)));
    sizes.push_back(static_cast<double>(g.edge_size(e)));
    strata.push_back(g.edge_size(e));
  }
  const Split split = stratified_split(strata, options.train_fraction, options.seed);
  FeatureRows train_x;
  std::vector<double> train_y;
  for (auto i : split.train) {
    train_x.push_back(features[i]);
    train_y.push_back(sizes[i]);
  }
  const LinearModel model = fit_ridge(train_x, train_y, options.ridge_lambda);
  std::vector<double> predicted;
  std::vector<double> truth;
  for (auto i : split.test) {
    predicted.push_back(model.predict(features[i]));
    truth.push_back(sizes[i]);
  }

  EvalReport report;
  report.task = "size";
  report.seed = options.seed;
  report.metric = "rmse";
  report.value = rmse(predicted, truth);
  report.train_count = split.train.size();
  report.test_count = split.test.size();
  report.params = {{"train_fraction", format_double(options.train_fraction)},
                   {"ridge_lambda", format_double(options.ridge_lambda)},
                   {"dim", std::to_string(emb.dim())}};
  return report;
}

namespace {

// C(n, k) saturated at `cap`.
double binomial_capped(std::size_t n, std::size_t k, double cap) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (c > cap) return cap;
  }
  return c;
}

// Uniform k-subset of [0, n) by Floyd's algorithm, sorted.
std::vector<NodeId> random_subset(std::size_t n, std::size_t k, Rng& rng) {
  std::set<NodeId> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const auto t = static_cast<NodeId>(rng.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(static_cast<NodeId>(j));
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

NegativeSample sample_negative_hyperedges(const Hypergraph& g,
                                          std::uint64_t seed) {
  std::set<std::vector<NodeId>> existing;
  std::map<std::uint32_t, std::size_t> per_size;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto members = g.edge(e);
    existing.emplace(members.begin(), members.end());
    ++per_size[static_cast<std::uint32_t>(members.size())];
  }
  // Distinct existing sets per size (duplicates in the graph count once).
  std::map<std::uint32_t, std::size_t> distinct_per_size;
  for (const auto& e : existing) ++distinct_per_size[static_cast<std::uint32_t>(e.size())];

  NegativeSample out;
  const std::size_t n = g.num_nodes();
  for (auto [size, count] : per_size) {
    Rng rng(derive_seed(seed, size));
    const double cap = 4.0 * static_cast<double>(count + distinct_per_size[size]) + 16.0;
    const double available =
        binomial_capped(n, size, cap) - static_cast<double>(distinct_per_size[size]);
    if (available < static_cast<double>(count)) {
      log::warn("negative sampling: only " + format_double(std::max(available, 0.0)) +
                " non-edges of size " + std::to_string(size) + " for " +
                std::to_string(count) + " positives; skipping this size");
      out.skipped_sizes.push_back(size);
      continue;
    }
    std::set<std::vector<NodeId>> drawn;
    std::vector<std::vector<NodeId>> batch;
    const std::size_t max_attempts = 100 * count + 1000;
    std::size_t attempts = 0;
    while (batch.size() < count && attempts < max_attempts) {
      ++attempts;
      auto candidate = random_subset(n, size, rng);
      if (existing.count(candidate) || !drawn.insert(candidate).second) continue;
      batch.push_back(std::move(candidate));
    }
    if (batch.size() < count) {
      log::warn("negative sampling: gave up on size " + std::to_string(size) +
                " after " + std::to_string(attempts) + " attempts; skipping");
      out.skipped_sizes.push_back(size);
      continue;
    }
    for (auto& e : batch) out.edges.push_back(std::move(e));
  }
  return out;
}

EvalReport logistic_auc(const FeatureRows& x, std::span<const int> labels,
                        std::span<const std::uint64_t> strata,
                        const LinkPredictionOptions& options) {
  if (x.size() != labels.size() || x.size() != strata.size()) {
    throw std::invalid_argument("logistic_auc: size mismatch");
  }
  const Split split = stratified_split(strata, options.train_fraction, options.seed);
  FeatureRows train_x;
  std::vector<int> train_y;
  for (auto i : split.train) {
    train_x.push_back(x[i]);
    train_y.push_back(labels[i]);
  }
  auto single_class = [](const std::vector<int>& y) {
    return std::all_of(y.begin(), y.end(), [&](int v) { return v == y.front(); });
  };
  std::vector<int> test_y;
  for (auto i : split.test) test_y.push_back(labels[i]);
  if (single_class(train_y) || single_class(test_y)) {
    throw DataError("hyperedge prediction: split contains a single class");
  }
  const LinearModel model = fit_logistic(train_x, train_y, options.logistic);
  std::vector<double> scores;
  for (auto i : split.test) scores.push_back(model.predict(x[i]));

  EvalReport report;
  report.task = "link";
  report.seed = options.seed;
  report.metric = "auc";
  report.value = auc(scores, test_y);
  report.train_count = split.train.size();
  report.test_count = split.test.size();
  report.params = {{"train_fraction", format_double(options.train_fraction)},
                   {"l2", format_double(options.logistic.l2)},
                   {"epochs", std::to_string(options.logistic.epochs)},
                   {"learning_rate", format_double(options.logistic.learning_rate)}};
  return report;
}

EvalReport hyperedge_prediction(const EmbeddingMatrix& emb, const Hypergraph& g,
                                const NegativeSample& negatives,
                                const LinkPredictionOptions& options) {
  if (emb.rows() != g.num_nodes()) {
    throw DataError("embedding rows do not match the graph's node count");
  }
  const std::set<std::uint32_t> skipped(negatives.skipped_sizes.begin(),
                                        negatives.skipped_sizes.end());
  std::set<std::vector<NodeId>> positive_sets;
  FeatureRows x;
  std::vector<int> labels;
  std::vector<std::uint64_t> strata;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto members = g.edge(e);
    const auto size = static_cast<std::uint32_t>(members.size());
    if (skipped.count(size)) continue;
    positive_sets.emplace(members.begin(), members.end());
    x.push_back(mean_pool(emb, members));
    labels.push_back(1);
    strata.push_back(2 * std::uint64_t{size} + 1);
  }
  for (const auto& e : negatives.edges) {
    if (positive_sets.count(e)) {
      throw DataError("negative sample coincides with an existing hyperedge");
    }
    x.push_back(mean_pool(emb, e));
    labels.push_back(0);
    strata.push_back(2 * std::uint64_t{e.size()});
  }
  if (negatives.edges.empty()) {
    throw DataError("hyperedge prediction: single class (no negative hyperedges "
                    "could be sampled)");
  }
  if (labels.front() == 0) {
    throw DataError("hyperedge prediction: single class (every hyperedge size "
                    "was skipped)");
  }
  EvalReport report = logistic_auc(x, labels, strata, options);
  report.params.emplace_back("negatives", std::to_string(negatives.edges.size()));
  report.params.emplace_back("skipped_sizes", std::to_string(skipped.size()));
  report.params.emplace_back("dim", std::to_string(emb.dim()));
  return report;
}

KMeansResult kmeans(const EmbeddingMatrix& emb, std::size_t k,
                    std::uint64_t seed, std::size_t max_iterations,
                    double tolerance) {
  const std::size_t n = emb.rows();
  const std::size_t dim = emb.dim();
  if (k == 0) throw std::invalid_argument("kmeans: k must be >= 1");
  if (k > n) throw std::invalid_argument("kmeans: k exceeds the number of points");

  auto sq_dist = [dim](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
    return s;
  };

  Rng rng(seed);
  KMeansResult result;
  auto first = emb.row(rng.below(n));
  result.centroids.emplace_back(first.begin(), first.end());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (result.centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], sq_dist(emb.row(i), result.centroids.back()));
      total += nearest[i];
    }
    std::size_t pick = n - 1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t i = 0; i < n; ++i) {
        target -= nearest[i];
        if (target < 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.below(n);
    }
    auto row = emb.row(pick);
    result.centroids.emplace_back(row.begin(), row.end());
  }

  result.assignment.assign(n, 0);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_dist(emb.row(i), result.centroids[c]);
        if (d < best) {
          best = d;
          result.assignment[i] = c;
        }
      }
      inertia += best;
    }
    result.inertia.push_back(inertia);
    result.iterations = iter + 1;

    FeatureRows sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto row = emb.row(i);
      auto& s = sums[result.assignment[i]];
      for (std::size_t d = 0; d < dim; ++d) s[d] += row[d];
      ++counts[result.assignment[i]];
    }
    double max_shift = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      for (double& x : sums[c]) x /= static_cast<double>(counts[c]);
      max_shift = std::max(max_shift, std::sqrt(sq_dist(sums[c], result.centroids[c])));
      result.centroids[c] = std::move(sums[c]);
    }
    if (max_shift < tolerance) break;
  }
  return result;
}

}  // namespace hypers2v

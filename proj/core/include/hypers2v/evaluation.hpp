#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypers2v/hypergraph.hpp"
#include "hypers2v/skipgram.hpp"

namespace hypers2v {

// ---------------------------------------------------------------- metrics

/// Root mean squared error. Throws on empty or mismatched input.
double rmse(std::span<const double> predicted, std::span<const double> truth);

/// ROC-AUC via the rank-sum statistic with average ranks for ties. Labels
/// are 0/1; throws DataError when only one class is present.
double auc(std::span<const double> scores, std::span<const int> labels);

double adjusted_rand_index(std::span<const std::size_t> a,
                           std::span<const std::size_t> b);

double median(std::vector<double> values);

// ------------------------------------------------------------ reporting

struct EvalReport {
  std::string task;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  std::size_t train_count = 0;
  std::size_t test_count = 0;
  std::vector<std::pair<std::string, std::string>> params;

  void write_key_values(std::ostream& out) const;
  static void write_csv_header(std::ostream& out);
  void write_csv_row(std::ostream& out) const;
};

// --------------------------------------------------------------- helpers

/// Mean of the member rows. Members may repeat; empty input throws.
std::vector<double> mean_pool(const EmbeddingMatrix& emb,
                              std::span<const NodeId> members);

/// Reorders a labelled embedding into the graph's node-id order. Throws
/// DataError naming every graph label without a vector.
EmbeddingMatrix align_embedding(const LabeledEmbedding& embedding,
                                const NodeLabelMap& graph_labels);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified split: items are ordered by (stratum, random tiebreak) and the
/// test set is a systematic sample with a random offset, so every stratum
/// is represented in proportion up to rounding. Both parts are non-empty
/// when there are at least two items.
Split stratified_split(std::span<const std::uint64_t> strata,
                       double train_fraction, std::uint64_t seed);

using FeatureRows = std::vector<std::vector<double>>;

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  double predict(std::span<const double> x) const;
};

/// Closed-form ridge regression with an unpenalized intercept.
LinearModel fit_ridge(const FeatureRows& x, std::span<const double> y,
                      double lambda);

struct LogisticOptions {
  double l2 = 1e-4;
  std::size_t epochs = 500;
  double learning_rate = 0.1;
};

/// L2-regularized logistic regression by full-batch gradient descent on
/// standardized features. The returned model takes raw features.
LinearModel fit_logistic(const FeatureRows& x, std::span<const int> labels,
                         const LogisticOptions& options = {});

// ----------------------------------------------------------------- tasks

struct SizeRegressionOptions {
  double train_fraction = 0.8;
  double ridge_lambda = 1.0;
  std::uint64_t seed = 1;
};

/// Predicts each hyperedge's size from the mean of its members' vectors.
/// Requires at least 5 hyperedges.
EvalReport size_regression(const EmbeddingMatrix& emb, const Hypergraph& g,
                           const SizeRegressionOptions& options = {});

struct NegativeSample {
  std::vector<std::vector<NodeId>> edges;    // sorted members
  std::vector<std::uint32_t> skipped_sizes;  // sizes that could not be matched
};

/// For each hyperedge size s with m existing edges, draws m distinct node
/// sets of size s that are not hyperedges. A size is skipped (and logged)
/// when fewer than m such sets exist or rejection sampling runs out of
/// attempts.
NegativeSample sample_negative_hyperedges(const Hypergraph& g,
                                          std::uint64_t seed);

struct LinkPredictionOptions {
  double train_fraction = 0.8;
  LogisticOptions logistic;
  std::uint64_t seed = 1;
};

/// Classifies existing hyperedges vs. negatives from mean-pooled vectors;
/// reports test AUC. Positives of skipped sizes are left out so classes stay
/// balanced per size.
EvalReport hyperedge_prediction(const EmbeddingMatrix& emb, const Hypergraph& g,
                                const NegativeSample& negatives,
                                const LinkPredictionOptions& options = {});

/// The classification core of `hyperedge_prediction` on precomputed
/// features: split by strata, fit logistic regression, AUC on the test part.
EvalReport logistic_auc(const FeatureRows& x, std::span<const int> labels,
                        std::span<const std::uint64_t> strata,
                        const LinkPredictionOptions& options = {});

struct KMeansResult {
  std::vector<std::size_t> assignment;
  FeatureRows centroids;
  std::vector<double> inertia;  // within-cluster SS after each assignment
  std::size_t iterations = 0;
};

/// Lloyd's algorithm from a k-means++ start. Stops when no centroid moves
/// more than `tolerance` or after `max_iterations`.
KMeansResult kmeans(const EmbeddingMatrix& emb, std::size_t k,
                    std::uint64_t seed, std::size_t max_iterations = 300,
                    double tolerance = 1e-8);

}  // namespace hypers2v

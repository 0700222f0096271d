#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hypers2v/alias_table.hpp"
#include "hypers2v/hypergraph.hpp"
#include "hypers2v/random_walk.hpp"

namespace hypers2v {

/// |V| x dim row-major matrix of node vectors.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dim)
      : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const EmbeddingMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct SgnsOptions {
  std::size_t dim = 64;
  std::size_t window = 5;
  std::size_t epochs = 5;
  std::size_t negatives = 5;
  double lr_start = 0.025;
  double lr_end = 0.0001;
  std::uint64_t seed = 1;
  /// 1 = deterministic single worker; more workers update shared vectors
  /// without locking and are not reproducible.
  std::size_t threads = 1;
};

/// One (center, context, negatives) training example.
struct SgnsTriple {
  NodeId center = 0;
  NodeId context = 0;
  std::vector<NodeId> negatives;
};

/// Negative log-likelihood of one triple:
/// -log s(out_ctx . in_c) - sum_n log s(-out_n . in_c).
double sgns_loss(std::span<const double> in_center,
                 std::span<const double> out_context,
                 std::span<const std::span<const double>> out_negatives);

/// Analytic gradients of `sgns_loss` with respect to each argument.
struct SgnsGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};
SgnsGradient sgns_gradient(std::span<const double> in_center,
                           std::span<const double> out_context,
                           std::span<const std::span<const double>> out_negatives);

/// Skip-gram with negative sampling. Noise distribution is unigram^0.75 over
/// corpus token counts; the learning rate decays linearly from lr_start to
/// lr_end over all epochs.
class SgnsTrainer {
 public:
  SgnsTrainer(std::size_t vocabulary, const WalkCorpus& corpus,
              const SgnsOptions& options);

  void train_epoch();
  std::size_t epochs_done() const noexcept { return epochs_done_; }

  /// Mean loss over a fixed batch (does not update parameters).
  double batch_loss(std::span<const SgnsTriple> batch) const;

  /// Draws a batch of positive pairs with negatives from the corpus.
  std::vector<SgnsTriple> sample_batch(std::size_t count,
                                       std::uint64_t seed) const;

  const EmbeddingMatrix& input_vectors() const noexcept { return input_; }
  const EmbeddingMatrix& output_vectors() const noexcept { return output_; }

 private:
  void train_range(std::size_t first_walk, std::size_t last_walk,
                   std::uint64_t stream, std::size_t tokens_before,
                   std::size_t total_tokens);

  const WalkCorpus* corpus_;
  SgnsOptions options_;
  EmbeddingMatrix input_;
  EmbeddingMatrix output_;
  AliasTable noise_;
  std::vector<NodeId> noise_ids_;
  std::size_t corpus_tokens_ = 0;
  std::size_t epochs_done_ = 0;
};

/// Trains for options.epochs and returns the input-side vectors. Throws
/// std::invalid_argument on dim == 0, an empty corpus, or a token outside
/// [0, vocabulary).
EmbeddingMatrix train_embeddings(std::size_t vocabulary,
                                 const WalkCorpus& corpus,
                                 const SgnsOptions& options);

/// Text format: header "rows dim", then "label v1 ... v_dim" per row,
/// shortest round-trip decimal representation.
void write_embeddings(const EmbeddingMatrix& emb, const NodeLabelMap& labels,
                      std::ostream& out);

struct LabeledEmbedding {
  NodeLabelMap labels;
  EmbeddingMatrix vectors;
};
LabeledEmbedding read_embeddings(std::istream& in);

}  // namespace hypers2v

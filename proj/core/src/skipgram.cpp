#include "hypers2v/skipgram.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hypers2v/errors.hpp"
#include "hypers2v/parallel.hpp"

namespace hypers2v {
namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigmoid(x)) without overflow.
double log_sigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double sgns_loss(std::span<const double> in_center,
                 std::span<const double> out_context,
                 std::span<const std::span<const double>> out_negatives) {
  double loss = -log_sigmoid(dot(in_center, out_context));
  for (auto neg : out_negatives) loss -= log_sigmoid(-dot(in_center, neg));
  return loss;
}

SgnsGradient sgns_gradient(
    std::span<const double> in_center, std::span<const double> out_context,
    std::span<const std::span<const double>> out_negatives) {
  const std::size_t dim = in_center.size();
  SgnsGradient grad;
  grad.center.assign(dim, 0.0);
  grad.context.assign(dim, 0.0);

  const double gp = sigmoid(dot(in_center, out_context)) - 1.0;
  for (std::size_t i = 0; i < dim; ++i) {
    grad.center[i] += gp * out_context[i];
    grad.context[i] = gp * in_center[i];
  }
  for (auto neg : out_negatives) {
    const double gn = sigmoid(dot(in_center, neg));
    auto& g = grad.negatives.emplace_back(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      grad.center[i] += gn * neg[i];
      g[i] = gn * in_center[i];
    }
  }
  return grad;
}

SgnsTrainer::SgnsTrainer(std::size_t vocabulary, const WalkCorpus& corpus,
                         const SgnsOptions& options)
    : corpus_(&corpus),
      options_(options),
      input_(vocabulary, options.dim),
      output_(vocabulary, options.dim) {
  if (options.dim == 0) throw std::invalid_argument("dim must be >= 1");
  if (options.epochs == 0) throw std::invalid_argument("epochs must be >= 1");
  if (vocabulary == 0) throw std::invalid_argument("empty vocabulary");

  std::vector<double> counts(vocabulary, 0.0);
  for (const auto& walk : corpus.walks) {
    for (NodeId t : walk) {
      if (t >= vocabulary) {
        throw std::invalid_argument("corpus token outside the vocabulary");
      }
      counts[t] += 1.0;
      ++corpus_tokens_;
    }
  }
  if (corpus_tokens_ == 0) throw std::invalid_argument("empty corpus");

  std::vector<double> noise_weights;
  for (NodeId v = 0; v < vocabulary; ++v) {
    if (counts[v] > 0) {
      noise_ids_.push_back(v);
      noise_weights.push_back(std::pow(counts[v], 0.75));
    }
  }
  noise_ = AliasTable(noise_weights);

  Rng rng(derive_seed(options.seed, 0x696e6974 /* "init" */));
  const double scale = 1.0 / static_cast<double>(options.dim);
  for (std::size_t r = 0; r < vocabulary; ++r) {
    for (double& x : input_.row(r)) x = (rng.uniform() - 0.5) * scale;
  }
}

void SgnsTrainer::train_range(std::size_t first_walk, std::size_t last_walk,
                              std::uint64_t stream, std::size_t tokens_before,
                              std::size_t total_tokens) {
  Rng rng(stream);
  const std::size_t dim = options_.dim;
  const auto window = static_cast<std::ptrdiff_t>(options_.window);
  std::vector<double> accum(dim);
  std::size_t processed = tokens_before;

  for (std::size_t w = first_walk; w < last_walk; ++w) {
    const auto& walk = corpus_->walks[w];
    const auto len = static_cast<std::ptrdiff_t>(walk.size());
    for (std::ptrdiff_t i = 0; i < len; ++i, ++processed) {
      const double progress =
          static_cast<double>(processed) / static_cast<double>(total_tokens);
      const double lr = std::max(
          options_.lr_end,
          options_.lr_start - (options_.lr_start - options_.lr_end) * progress);
      const NodeId center = walk[static_cast<std::size_t>(i)];
      auto in = input_.row(center);

      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - window);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, i + window);
      for (std::ptrdiff_t j = lo; j <= hi; ++j) {
        if (j == i) continue;
        const NodeId context = walk[static_cast<std::size_t>(j)];
        std::fill(accum.begin(), accum.end(), 0.0);
        for (std::size_t s = 0; s <= options_.negatives; ++s) {
          NodeId target = context;
          double label = 1.0;
          if (s > 0) {
            target = noise_ids_[noise_.sample(rng)];
            if (target == context) continue;
            label = 0.0;
          }
          auto out = output_.row(target);
          double f = 0.0;
          for (std::size_t d = 0; d < dim; ++d) f += in[d] * out[d];
          const double g = (label - sigmoid(f)) * lr;
          for (std::size_t d = 0; d < dim; ++d) {
            accum[d] += g * out[d];
            out[d] += g * in[d];
          }
        }
        for (std::size_t d = 0; d < dim; ++d) in[d] += accum[d];
      }
    }
  }
}

void SgnsTrainer::train_epoch() {
  const std::size_t total = corpus_tokens_ * options_.epochs;
  const std::size_t before_epoch = corpus_tokens_ * epochs_done_;
  const std::size_t walks = corpus_->walks.size();
  const std::size_t workers =
      std::min(resolve_threads(options_.threads), std::max<std::size_t>(walks, 1));

  if (workers <= 1) {
    train_range(0, walks, derive_seed(options_.seed, 1, epochs_done_),
                before_epoch, total);
  } else {
    // Hogwild: workers share the parameter arrays without synchronization.
    std::vector<std::size_t> bounds(workers + 1);
    std::vector<std::size_t> token_offset(workers + 1, before_epoch);
    for (std::size_t t = 0; t <= workers; ++t) bounds[t] = walks * t / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      std::size_t tokens = 0;
      for (std::size_t w = bounds[t]; w < bounds[t + 1]; ++w) {
        tokens += corpus_->walks[w].size();
      }
      token_offset[t + 1] = token_offset[t] + tokens;
    }
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        train_range(bounds[t], bounds[t + 1],
                    derive_seed(options_.seed, 1 + t, epochs_done_),
                    token_offset[t], total);
      });
    }
  }
  ++epochs_done_;
}

double SgnsTrainer::batch_loss(std::span<const SgnsTriple> batch) const {
  if (batch.empty()) return 0.0;
  double total = 0.0;
  std::vector<std::span<const double>> negs;
  for (const auto& t : batch) {
    negs.clear();
    for (NodeId n : t.negatives) negs.push_back(output_.row(n));
    total += sgns_loss(input_.row(t.center), output_.row(t.context), negs);
  }
  return total / static_cast<double>(batch.size());
}

std::vector<SgnsTriple> SgnsTrainer::sample_batch(std::size_t count,
                                                  std::uint64_t seed) const {
  Rng rng(seed);
  std::vector<SgnsTriple> batch;
  const auto& walks = corpus_->walks;
  std::size_t attempts = 0;
  while (batch.size() < count && attempts++ < count * 100) {
    const auto& walk = walks[rng.below(walks.size())];
    if (walk.size() < 2) continue;
    const auto i = static_cast<std::ptrdiff_t>(rng.below(walk.size()));
    const auto len = static_cast<std::ptrdiff_t>(walk.size());
    const auto window = static_cast<std::ptrdiff_t>(options_.window);
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - window);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, i + window);
    auto j = lo + static_cast<std::ptrdiff_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    if (j == i) continue;
    SgnsTriple t;
    t.center = walk[static_cast<std::size_t>(i)];
    t.context = walk[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < options_.negatives; ++s) {
      t.negatives.push_back(noise_ids_[noise_.sample(rng)]);
    }
    batch.push_back(std::move(t));
  }
  return batch;
}

EmbeddingMatrix train_embeddings(std::size_t vocabulary,
                                 const WalkCorpus& corpus,
                                 const SgnsOptions& options) {
  SgnsTrainer trainer(vocabulary, corpus, options);
  for (std::size_t e = 0; e < options.epochs; ++e) trainer.train_epoch();
  return trainer.input_vectors();
}

void write_embeddings(const EmbeddingMatrix& emb, const NodeLabelMap& labels,
                      std::ostream& out) {
  if (labels.size() != emb.rows()) {
    throw std::invalid_argument("label count does not match embedding rows");
  }
  out << emb.rows() << ' ' << emb.dim() << '\n';
  char buf[64];
  for (std::size_t r = 0; r < emb.rows(); ++r) {
    out << labels.label(static_cast<NodeId>(r));
    for (double x : emb.row(r)) {
      auto res = std::to_chars(buf, buf + sizeof(buf), x);
      out << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

LabeledEmbedding read_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("missing embedding header", line_no + 1);
  std::size_t rows = 0;
  std::size_t dim = 0;
  {
    std::istringstream header(line);
    if (!(header >> rows >> dim) || dim == 0) {
      throw ParseError("expected header 'rows dim'", line_no);
    }
  }
  LabeledEmbedding result{{}, EmbeddingMatrix(rows, dim)};
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_line()) throw ParseError("missing embedding row", line_no + 1);
    std::istringstream row(line);
    std::string label;
    row >> label;
    if (result.labels.find(label)) {
      throw ParseError("duplicate label '" + label + "'", line_no);
    }
    result.labels.intern(label);
    auto values = result.vectors.row(r);
    for (std::size_t d = 0; d < dim; ++d) {
      std::string token;
      if (!(row >> token)) throw ParseError("too few values", line_no);
      auto res = std::from_chars(token.data(), token.data() + token.size(), values[d]);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size() ||
          !std::isfinite(values[d])) {
        throw ParseError("bad number '" + token + "'", line_no);
      }
    }
    std::string extra;
    if (row >> extra) throw ParseError("too many values", line_no);
  }
  return result;
}

}  // namespace hypers2v

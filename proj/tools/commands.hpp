#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypers2v/evaluation.hpp"
#include "hypers2v/pipeline.hpp"
#include "hypers2v/toygen.hpp"

namespace hypers2v::cli {

namespace fs = std::filesystem;

/// Bad flag values or combinations detected after parsing (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat "key=value" file. '#' lines and blank lines are skipped; keys are
/// trimmed and '_' is normalized to '-'.
std::map<std::string, std::string> read_config(const fs::path& path);

/// 64-bit FNV-1a over the file bytes, as 16 hex digits.
std::string file_digest(const fs::path& path);

/// "label class_id" lines.
std::map<std::string, std::size_t> read_colors(const fs::path& path);

struct EmbedCommand {
  fs::path input;
  fs::path out_prefix;
  EmbedConfig config;
  bool dedupe = false;
  bool write_corpus = true;
  bool save_distances = false;
  std::optional<fs::path> load_distances;
  std::optional<fs::path> colors;  // adds the class column to the plot file
  bool histograms = false;
};

struct EmbedOutputs {
  fs::path manifest;
  fs::path embedding;
  std::optional<fs::path> corpus;
  std::optional<fs::path> distances;
  std::optional<fs::path> plot;
  std::optional<fs::path> histograms;
};

/// Writes PREFIX.emb, PREFIX.corpus, PREFIX.manifest and, on request,
/// PREFIX.dist, PREFIX.plot (dim 2 only) and PREFIX.weights.csv. Files are
/// written under temporary names and renamed once every stage succeeded.
EmbedOutputs run_embed(const EmbedCommand& cmd);

/// Manifest text for a command: every effective parameter plus the input
/// digest and the output file names.
std::string render_manifest(const EmbedCommand& cmd, const std::string& digest,
                            const EmbedOutputs& outputs);

enum class EvalTask { kSize, kLink, kCluster };
EvalTask parse_eval_task(const std::string& name);

struct EvalCommand {
  EvalTask task = EvalTask::kSize;
  fs::path embedding;
  fs::path graph;
  std::vector<std::uint64_t> seeds{1};
  std::optional<fs::path> out_prefix;  // stdout when unset
  bool dedupe = false;
  double train_fraction = 0.8;
  double ridge_lambda = 1.0;
  LogisticOptions logistic;
  std::size_t clusters = 6;
  std::optional<fs::path> colors;  // cluster: report ARI against these
  std::optional<fs::path> manifest;  // defaults to the embedding's sibling
};

struct EvalOutcome {
  std::vector<EvalReport> reports;
  double median = 0.0;
  std::vector<std::size_t> assignment;  // cluster task, first seed
};

/// Runs one evaluation per seed. With an output prefix writes
/// PREFIX.report (key=value blocks), PREFIX.csv and, for clustering,
/// PREFIX.clusters plus PREFIX.plot when the embedding is 2-D.
EvalOutcome run_eval(const EvalCommand& cmd, std::ostream& out);

struct ToygenCommand {
  std::string topology;  // a toy preset name or "coauthor"
  fs::path out_prefix;
  std::uint64_t seed = 0;
  CoauthorParams coauthor;
};

/// PREFIX.txt (hyperedge list) and, for toy presets, PREFIX.colors.
void run_toygen(const ToygenCommand& cmd);

/// Writes the clique expansion of `input` to `output`, or stdout when empty.
void run_export_expansion(const fs::path& input, const fs::path& output,
                          bool dedupe, std::ostream& out);

}  // namespace hypers2v::cli

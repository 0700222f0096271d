// hypers2v command-line front end.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hypers2v/errors.hpp"
#include "hypers2v/log.hpp"

namespace {

namespace cli = hypers2v::cli;
using hypers2v::DistanceMode;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

// Fills every option of `sub` that was not given on the command line from
// the flat key=value file named by --config.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  for (const auto& [key, value] : cli::read_config(path)) {
    if (key == "config") throw cli::UsageError("config files cannot nest");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw cli::UsageError("config: unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(value);
    opt->run_callback();
  }
}

void add_embed_options(CLI::App* sub, cli::EmbedCommand& cmd, std::string& mode,
                       std::string& config) {
  auto& c = cmd.config;
  sub->add_option("input", cmd.input, "Hyperedge-list file")->required();
  sub->add_option("-o,--out", cmd.out_prefix,
                  "Output prefix (writes PREFIX.emb, PREFIX.corpus, PREFIX.manifest)");
  sub->add_option("--config", config, "Flat key=value file; flags override it");
  sub->add_option("--k-max", c.k_max, "Deepest hop layer")->capture_default_str();
  sub->add_option("--mode", mode, "Distance variant")
      ->check(CLI::IsMember({"collapsed", "uncollapsed"}))
      ->capture_default_str();
  sub->add_option("--exponent", c.exponent, "Exponent n of the magnitude-position distance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--walks", c.walks_per_node, "Walks per node")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--length", c.walk_length, "Tokens per walk")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("-q,--stay-probability", c.stay_probability,
                  "Probability of an in-layer step")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--dim", c.dim, "Embedding dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--window", c.window, "Skip-gram window")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--negatives", c.negatives, "Negative samples per pair")
      ->capture_default_str();
  sub->add_option("--epochs", c.epochs, "Skip-gram epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  sub->add_flag("--deterministic,!--no-deterministic", c.deterministic,
                "Single-worker skip-gram training (reproducible)");
  sub->add_flag("--dedupe", cmd.dedupe, "Drop repeated hyperedges");
  sub->add_flag("--corpus,!--no-corpus", cmd.write_corpus, "Write the walk corpus");
  sub->add_flag("--save-distances", cmd.save_distances, "Write PREFIX.dist");
  sub->add_option("--load-distances", cmd.load_distances,
                  "Reuse a distance cache instead of recomputing")
      ->check(CLI::ExistingFile);
  sub->add_option("--colors", cmd.colors, "'label class' file for the 2-D plot output")
      ->check(CLI::ExistingFile);
  sub->add_flag("--weight-histograms", cmd.histograms, "Write PREFIX.weights.csv");
}

void add_eval_options(CLI::App* sub, cli::EvalCommand& cmd, std::string& config) {
  sub->add_option("-e,--embedding", cmd.embedding, "Embedding file")->required();
  sub->add_option("-g,--graph", cmd.graph, "Hyperedge-list file")->required();
  sub->add_option("--config", config, "Flat key=value file; flags override it");
  sub->add_option("--seeds", cmd.seeds, "Split / sampling seeds")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("-o,--out", cmd.out_prefix,
                  "Output prefix (PREFIX.report, PREFIX.csv); stdout if unset");
  sub->add_flag("--dedupe", cmd.dedupe, "Drop repeated hyperedges");
  sub->add_option("--train-fraction", cmd.train_fraction)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--ridge-lambda", cmd.ridge_lambda)->capture_default_str();
  sub->add_option("--l2", cmd.logistic.l2)->capture_default_str();
  sub->add_option("--logistic-epochs", cmd.logistic.epochs)->capture_default_str();
  sub->add_option("--learning-rate", cmd.logistic.learning_rate)->capture_default_str();
  sub->add_option("-k,--clusters", cmd.clusters, "k for clustering")
      ->capture_default_str();
  sub->add_option("--colors", cmd.colors, "Ground-truth classes; clustering reports ARI")
      ->check(CLI::ExistingFile);
  sub->add_option("--manifest", cmd.manifest, "Manifest recorded in the report");
}

int run(int argc, char** argv) {
  CLI::App app("Structural embeddings for hypergraphs", "hypers2v");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "hypers2v 0.1.0");
  bool verbose = false;
  bool quiet = false;
  app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");
  app.add_flag("--quiet", quiet, "Suppress warnings");

  cli::EmbedCommand embed;
  std::string embed_mode = "collapsed";
  std::string embed_config;
  auto* embed_cmd = app.add_subcommand("embed", "Learn structural node embeddings");
  add_embed_options(embed_cmd, embed, embed_mode, embed_config);

  cli::EvalCommand eval;
  std::string eval_task;
  std::string eval_config;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an embedding");
  eval_cmd->add_option("task", eval_task, "size | link | cluster")
      ->required()
      ->check(CLI::IsMember({"size", "link", "cluster"}));
  add_eval_options(eval_cmd, eval, eval_config);

  // Shorthand subcommands share the eval options.
  cli::EvalCommand eval_size;
  std::string eval_size_config;
  auto* eval_size_cmd = app.add_subcommand("eval-size", "Hyperedge size regression (RMSE)");
  add_eval_options(eval_size_cmd, eval_size, eval_size_config);
  cli::EvalCommand eval_link;
  std::string eval_link_config;
  auto* eval_link_cmd = app.add_subcommand("eval-link", "Hyperedge prediction (AUC)");
  add_eval_options(eval_link_cmd, eval_link, eval_link_config);
  cli::EvalCommand cluster;
  std::string cluster_config;
  auto* cluster_cmd = app.add_subcommand("cluster", "k-means over node embeddings");
  add_eval_options(cluster_cmd, cluster, cluster_config);

  cli::ToygenCommand toygen;
  auto* toygen_cmd = app.add_subcommand("toygen", "Write a toy hypergraph and its colors");
  toygen_cmd->add_option("topology", toygen.topology,
                         "star | circle | mesh | tower | twin | coauthor")
      ->required();
  toygen_cmd->add_option("-o,--out", toygen.out_prefix,
                         "Output prefix (PREFIX.txt, PREFIX.colors)")
      ->required();
  toygen_cmd->add_option("--seed", toygen.seed, "Shuffles ids (0 keeps the canonical order)")
      ->capture_default_str();
  toygen_cmd->add_option("--authors", toygen.coauthor.authors)->capture_default_str();
  toygen_cmd->add_option("--papers", toygen.coauthor.papers)->capture_default_str();
  toygen_cmd->add_option("--communities", toygen.coauthor.communities)
      ->capture_default_str();

  std::string expansion_input;
  std::string expansion_output;
  bool expansion_dedupe = false;
  auto* export_cmd = app.add_subcommand("export-expansion",
                                        "Write the clique expansion as 'u v' pairs");
  export_cmd->add_option("input", expansion_input, "Hyperedge-list file")->required();
  export_cmd->add_option("-o,--out", expansion_output, "Output file (stdout if unset)");
  export_cmd->add_flag("--dedupe", expansion_dedupe, "Drop repeated hyperedges");

  try {
    app.parse(argc, argv);
    apply_config(embed_cmd, embed_config);
    apply_config(eval_cmd, eval_config);
    apply_config(eval_size_cmd, eval_size_config);
    apply_config(eval_link_cmd, eval_link_config);
    apply_config(cluster_cmd, cluster_config);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  hypers2v::log::set_level(quiet     ? hypers2v::log::Level::kQuiet
                           : verbose ? hypers2v::log::Level::kInfo
                                     : hypers2v::log::Level::kWarn);

  if (*embed_cmd) {
    embed.config.mode =
        embed_mode == "collapsed" ? DistanceMode::kCollapsed : DistanceMode::kUncollapsed;
    const auto outputs = cli::run_embed(embed);
    std::cout << "wrote " << outputs.embedding.string() << " (manifest "
              << outputs.manifest.string() << ")\n";
  } else if (*eval_cmd) {
    eval.task = cli::parse_eval_task(eval_task);
    cli::run_eval(eval, std::cout);
  } else if (*eval_size_cmd) {
    eval_size.task = cli::EvalTask::kSize;
    cli::run_eval(eval_size, std::cout);
  } else if (*eval_link_cmd) {
    eval_link.task = cli::EvalTask::kLink;
    cli::run_eval(eval_link, std::cout);
  } else if (*cluster_cmd) {
    cluster.task = cli::EvalTask::kCluster;
    cli::run_eval(cluster, std::cout);
  } else if (*toygen_cmd) {
    cli::run_toygen(toygen);
  } else if (*export_cmd) {
    cli::run_export_expansion(expansion_input, expansion_output, expansion_dedupe,
                              std::cout);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hypers2v::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

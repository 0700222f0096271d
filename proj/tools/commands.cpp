#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

#include "hypers2v/errors.hpp"
#include "hypers2v/hypergraph_io.hpp"
#include "hypers2v/log.hpp"

namespace hypers2v::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string with_suffix(const fs::path& prefix, const char* suffix) {
  return prefix.string() + suffix;
}

std::string number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, res.ptr};
}

// Runs one pipeline stage and prefixes any failure with the stage name,
// keeping the error family (and so the exit code).
template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const UsageError&) {
    throw;
  } catch (const DataError& e) {
    throw DataError(std::string(name) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

// Output files are produced as "<name>.tmp" and renamed together by
// commit(); anything left uncommitted is deleted.
class OutputSet {
 public:
  OutputSet() = default;
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : finals_) fs::remove(temp_name(f), ec);
  }

  std::ofstream open(const fs::path& final_path, bool binary = false) {
    if (final_path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(final_path.parent_path(), ec);
    }
    finals_.push_back(final_path);
    std::ofstream out(temp_name(final_path),
                      binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) throw DataError("cannot write " + final_path.string());
    return out;
  }

  void commit() {
    for (const auto& f : finals_) fs::rename(temp_name(f), f);
    committed_ = true;
  }

 private:
  static fs::path temp_name(const fs::path& p) { return p.string() + ".tmp"; }

  std::vector<fs::path> finals_;
  bool committed_ = false;
};

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw DataError("failed writing " + path.string());
}

std::optional<fs::path> sibling_manifest(const fs::path& embedding) {
  fs::path candidate = embedding;
  candidate.replace_extension(".manifest");
  if (fs::exists(candidate)) return candidate;
  return std::nullopt;
}

std::string mode_name(DistanceMode mode) {
  return mode == DistanceMode::kCollapsed ? "collapsed" : "uncollapsed";
}

std::string task_name(EvalTask task) {
  switch (task) {
    case EvalTask::kSize: return "size";
    case EvalTask::kLink: return "link";
    case EvalTask::kCluster: return "cluster";
  }
  return "unknown";
}

}  // namespace

std::map<std::string, std::string> read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) +
                       ": empty key");
    }
    values[key] = trim(t.substr(eq + 1));
  }
  return values;
}

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

std::map<std::string, std::size_t> read_colors(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path.string());
  std::map<std::string, std::size_t> colors;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream row(t);
    std::string label;
    std::size_t color = 0;
    if (!(row >> label >> color)) throw ParseError("expected 'label class_id'", line_no);
    colors[label] = color;
  }
  return colors;
}

std::string render_manifest(const EmbedCommand& cmd, const std::string& digest,
                            const EmbedOutputs& outputs) {
  const EmbedConfig& c = cmd.config;
  std::ostringstream m;
  m << "# hypers2v embed run manifest\n"
    << "input=" << cmd.input.string() << '\n'
    << "input_digest=fnv1a64:" << digest << '\n'
    << "dedupe=" << (cmd.dedupe ? "true" : "false") << '\n'
    << "k_max=" << c.k_max << '\n'
    << "mode=" << mode_name(c.mode) << '\n'
    << "exponent=" << c.exponent << '\n'
    << "walks=" << c.walks_per_node << '\n'
    << "length=" << c.walk_length << '\n'
    << "stay_probability=" << number(c.stay_probability) << '\n'
    << "dim=" << c.dim << '\n'
    << "window=" << c.window << '\n'
    << "negatives=" << c.negatives << '\n'
    << "epochs=" << c.epochs << '\n'
    << "seed=" << c.seed << '\n'
    << "threads=" << c.threads << '\n'
    << "deterministic=" << (c.deterministic ? "true" : "false") << '\n';
  if (cmd.load_distances) {
    m << "distances_from=" << cmd.load_distances->string() << '\n'
      << "distances_digest=fnv1a64:" << file_digest(*cmd.load_distances) << '\n';
  }
  m << "embedding=" << outputs.embedding.filename().string() << '\n';
  if (outputs.corpus) m << "corpus=" << outputs.corpus->filename().string() << '\n';
  if (outputs.distances) {
    m << "distance_cache=" << outputs.distances->filename().string() << '\n';
  }
  if (outputs.plot) m << "plot=" << outputs.plot->filename().string() << '\n';
  if (outputs.histograms) {
    m << "weight_histograms=" << outputs.histograms->filename().string() << '\n';
  }
  return m.str();
}

EmbedOutputs run_embed(const EmbedCommand& cmd) {
  if (cmd.out_prefix.empty()) throw UsageError("embed: --out is required");
  const Hypergraph g = stage("load", [&] {
    return load_hyperedge_list(cmd.input, cmd.dedupe);
  });
  const std::string digest = file_digest(cmd.input);
  log::info("loaded " + std::to_string(g.num_nodes()) + " nodes, " +
            std::to_string(g.num_edges()) + " hyperedges");

  std::map<std::string, std::size_t> colors;
  if (cmd.colors) colors = stage("colors", [&] { return read_colors(*cmd.colors); });

  LayerDistances distances = stage("distances", [&] {
    if (!cmd.load_distances) return cumulative_distances(g, cmd.config.distance_options());
    std::ifstream in(*cmd.load_distances, std::ios::binary);
    if (!in) throw DataError("cannot read " + cmd.load_distances->string());
    LayerDistances loaded = LayerDistances::load(in);
    if (loaded.num_nodes() != g.num_nodes()) {
      throw DataError("distance cache has " + std::to_string(loaded.num_nodes()) +
                      " nodes, graph has " + std::to_string(g.num_nodes()));
    }
    if (loaded.k_max() != cmd.config.k_max) {
      throw DataError("distance cache was computed with k_max=" +
                      std::to_string(loaded.k_max()));
    }
    return loaded;
  });

  EmbedOutputs outputs;
  outputs.manifest = with_suffix(cmd.out_prefix, ".manifest");
  outputs.embedding = with_suffix(cmd.out_prefix, ".emb");
  if (cmd.write_corpus) outputs.corpus = with_suffix(cmd.out_prefix, ".corpus");
  if (cmd.save_distances) outputs.distances = with_suffix(cmd.out_prefix, ".dist");
  if (cmd.config.dim == 2) outputs.plot = with_suffix(cmd.out_prefix, ".plot");
  if (cmd.histograms) outputs.histograms = with_suffix(cmd.out_prefix, ".weights.csv");

  OutputSet files;
  if (outputs.distances) {
    auto out = files.open(*outputs.distances, true);
    distances.save(out);
    close_checked(out, *outputs.distances);
  }

  EmbedResult result;
  result.multilayer = stage("multilayer", [&] { return build_multilayer(distances); });
  result.corpus = stage("walks", [&] {
    return generate_walks(result.multilayer, cmd.config.walk_options());
  });
  result.embedding = stage("skipgram", [&] {
    return train_embeddings(g.num_nodes(), result.corpus, cmd.config.sgns_options());
  });

  stage("write", [&] {
    {
      auto out = files.open(outputs.embedding);
      write_embeddings(result.embedding, g.labels(), out);
      close_checked(out, outputs.embedding);
    }
    if (outputs.corpus) {
      auto out = files.open(*outputs.corpus);
      write_corpus(result.corpus, g.labels(), out);
      close_checked(out, *outputs.corpus);
    }
    if (outputs.plot) {
      auto out = files.open(*outputs.plot);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto row = result.embedding.row(v);
        out << g.label(v) << ' ' << number(row[0]) << ' ' << number(row[1]);
        if (auto it = colors.find(g.label(v)); it != colors.end()) {
          out << ' ' << it->second;
        }
        out << '\n';
      }
      close_checked(out, *outputs.plot);
    }
    if (outputs.histograms) {
      auto out = files.open(*outputs.histograms);
      write_weight_histograms(result.multilayer, out);
      close_checked(out, *outputs.histograms);
    }
    auto out = files.open(outputs.manifest);
    out << render_manifest(cmd, digest, outputs);
    close_checked(out, outputs.manifest);
    return 0;
  });
  files.commit();
  return outputs;
}

EvalTask parse_eval_task(const std::string& name) {
  if (name == "size") return EvalTask::kSize;
  if (name == "link") return EvalTask::kLink;
  if (name == "cluster") return EvalTask::kCluster;
  throw UsageError("unknown eval task '" + name + "' (size, link, cluster)");
}

EvalOutcome run_eval(const EvalCommand& cmd, std::ostream& out) {
  if (cmd.seeds.empty()) throw UsageError("eval: at least one seed is required");
  const Hypergraph g = stage("load", [&] {
    return load_hyperedge_list(cmd.graph, cmd.dedupe);
  });
  const EmbeddingMatrix emb = stage("embedding", [&] {
    std::ifstream in(cmd.embedding);
    if (!in) throw DataError("cannot read " + cmd.embedding.string());
    return align_embedding(read_embeddings(in), g.labels());
  });
  const std::optional<fs::path> manifest =
      cmd.manifest ? cmd.manifest : sibling_manifest(cmd.embedding);

  std::vector<std::size_t> truth;
  if (cmd.colors) {
    const auto colors = stage("colors", [&] { return read_colors(*cmd.colors); });
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      auto it = colors.find(g.label(v));
      if (it == colors.end()) throw DataError("colors: no class for " + g.label(v));
      truth.push_back(it->second);
    }
  }

  EvalOutcome outcome;
  stage(task_name(cmd.task).c_str(), [&] {
    for (std::uint64_t seed : cmd.seeds) {
      EvalReport report;
      if (cmd.task == EvalTask::kSize) {
        report = size_regression(emb, g, {cmd.train_fraction, cmd.ridge_lambda, seed});
      } else if (cmd.task == EvalTask::kLink) {
        const NegativeSample negatives = sample_negative_hyperedges(g, seed);
        report = hyperedge_prediction(emb, g, negatives,
                                      {cmd.train_fraction, cmd.logistic, seed});
      } else {
        if (cmd.clusters == 0 || cmd.clusters > g.num_nodes()) {
          throw UsageError("cluster: k must be in [1, " +
                           std::to_string(g.num_nodes()) + "]");
        }
        KMeansResult km = kmeans(emb, cmd.clusters, seed);
        report.task = "cluster";
        report.seed = seed;
        if (truth.empty()) {
          report.metric = "inertia";
          report.value = km.inertia.empty() ? 0.0 : km.inertia.back();
        } else {
          report.metric = "ari";
          report.value = adjusted_rand_index(km.assignment, truth);
        }
        report.train_count = g.num_nodes();
        report.params = {{"k", std::to_string(cmd.clusters)},
                         {"iterations", std::to_string(km.iterations)},
                         {"dim", std::to_string(emb.dim())}};
        if (outcome.assignment.empty()) outcome.assignment = std::move(km.assignment);
      }
      report.params.emplace_back("embedding", cmd.embedding.filename().string());
      if (manifest) report.params.emplace_back("manifest", manifest->filename().string());
      outcome.reports.push_back(std::move(report));
    }
    return 0;
  });

  std::vector<double> values;
  for (const auto& r : outcome.reports) values.push_back(r.value);
  outcome.median = median(values);

  auto write_reports = [&](std::ostream& o) {
    for (const auto& r : outcome.reports) {
      r.write_key_values(o);
      o << '\n';
    }
    o << "summary=median\n"
      << "task=" << outcome.reports.front().task << '\n'
      << "metric=" << outcome.reports.front().metric << '\n'
      << "seeds=" << outcome.reports.size() << '\n'
      << "value=" << number(outcome.median) << '\n';
  };

  if (!cmd.out_prefix) {
    write_reports(out);
    return outcome;
  }
  OutputSet files;
  const fs::path report_path = with_suffix(*cmd.out_prefix, ".report");
  const fs::path csv_path = with_suffix(*cmd.out_prefix, ".csv");
  {
    auto f = files.open(report_path);
    write_reports(f);
    close_checked(f, report_path);
  }
  {
    auto f = files.open(csv_path);
    EvalReport::write_csv_header(f);
    for (const auto& r : outcome.reports) r.write_csv_row(f);
    close_checked(f, csv_path);
  }
  if (cmd.task == EvalTask::kCluster) {
    const fs::path clusters_path = with_suffix(*cmd.out_prefix, ".clusters");
    auto f = files.open(clusters_path);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      f << g.label(v) << ' ' << outcome.assignment[v] << '\n';
    }
    close_checked(f, clusters_path);
    if (emb.dim() == 2) {
      const fs::path plot_path = with_suffix(*cmd.out_prefix, ".plot");
      auto p = files.open(plot_path);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto row = emb.row(v);
        p << g.label(v) << ' ' << number(row[0]) << ' ' << number(row[1]) << ' '
          << outcome.assignment[v] << '\n';
      }
      close_checked(p, plot_path);
    }
  }
  files.commit();
  out << "value=" << number(outcome.median) << " (median over "
      << outcome.reports.size() << " seeds) -> " << report_path.string() << '\n';
  return outcome;
}

void run_toygen(const ToygenCommand& cmd) {
  if (cmd.out_prefix.empty()) throw UsageError("toygen: --out is required");
  OutputSet files;
  const fs::path graph_path = with_suffix(cmd.out_prefix, ".txt");
  if (cmd.topology == "coauthor") {
    const Hypergraph g = coauthorship_network(cmd.coauthor, cmd.seed);
    auto f = files.open(graph_path);
    write_hyperedge_list(g, f);
    close_checked(f, graph_path);
  } else {
    ToyTopology topology{};
    try {
      topology = parse_topology(cmd.topology);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const ToyNetwork toy = generate_toy(ToySpec::preset(topology), cmd.seed);
    {
      auto f = files.open(graph_path);
      write_hyperedge_list(toy.graph, f);
      close_checked(f, graph_path);
    }
    const fs::path colors_path = with_suffix(cmd.out_prefix, ".colors");
    auto f = files.open(colors_path);
    write_colors(toy, f);
    close_checked(f, colors_path);
  }
  files.commit();
}

void run_export_expansion(const fs::path& input, const fs::path& output,
                          bool dedupe, std::ostream& out) {
  const Hypergraph g = stage("load", [&] { return load_hyperedge_list(input, dedupe); });
  if (output.empty()) {
    write_clique_expansion(g, out);
    return;
  }
  OutputSet files;
  auto f = files.open(output);
  write_clique_expansion(g, f);
  close_checked(f, output);
  files.commit();
}

}  // namespace hypers2v::cli

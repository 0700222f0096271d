#include <benchmark/benchmark.h>

#include <vector>

#include "hypers2v/dtw.hpp"
#include "hypers2v/hypergraph_io.hpp"
#include "hypers2v/layer_distances.hpp"
#include "hypers2v/layer_graph.hpp"
#include "hypers2v/random_walk.hpp"
#include "hypers2v/rng.hpp"
#include "hypers2v/skipgram.hpp"
#include "hypers2v/structure_distance.hpp"
#include "hypers2v/toygen.hpp"

namespace {

using namespace hypers2v;

const Hypergraph& lesmis() {
  static const Hypergraph g = load_hyperedge_list(HYPERS2V_DATA_DIR "/lesmis.txt");
  return g;
}

void BM_DtwCmpd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<CmpdElement> a(n), b(n);
  for (auto* s : {&a, &b}) {
    for (auto& e : *s) {
      e.size = 2 + static_cast<std::uint32_t>(rng.below(10));
      e.freq = 1 + static_cast<std::uint32_t>(rng.below(3));
      e.bias = rng.uniform();
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dtw(std::span<const CmpdElement>(a), std::span<const CmpdElement>(b),
                                 [](CmpdElement x, CmpdElement y) { return cmpd(x, y); }));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n * n));
}
BENCHMARK(BM_DtwCmpd)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BM_LayerDistancesLesmis(benchmark::State& state) {
  DistanceOptions options;
  options.k_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cumulative_distances(lesmis(), options));
  }
}
BENCHMARK(BM_LayerDistancesLesmis)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_WalksLesmis(benchmark::State& state) {
  const MultilayerGraph ml = build_multilayer(cumulative_distances(lesmis()));
  WalkOptions options;
  options.walks_per_node = 10;
  std::size_t tokens = 0;
  for (auto _ : state) {
    const WalkCorpus corpus = generate_walks(ml, options);
    tokens += corpus.token_count();
  }
  state.counters["tokens/s"] =
      benchmark::Counter(static_cast<double>(tokens), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_WalksLesmis)->Unit(benchmark::kMillisecond);

void BM_SgnsEpoch(benchmark::State& state) {
  const ToyNetwork toy = generate_toy(ToySpec::preset(ToyTopology::kMesh));
  const MultilayerGraph ml = build_multilayer(cumulative_distances(toy.graph));
  WalkOptions walks;
  walks.walks_per_node = 20;
  const WalkCorpus corpus = generate_walks(ml, walks);
  SgnsOptions options;
  options.dim = static_cast<std::size_t>(state.range(0));
  SgnsTrainer trainer(toy.graph.num_nodes(), corpus, options);
  for (auto _ : state) trainer.train_epoch();
  state.counters["tokens/s"] = benchmark::Counter(
      static_cast<double>(corpus.token_count() * state.iterations()), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SgnsEpoch)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

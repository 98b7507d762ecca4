#include <benchmark/benchmark.h>

#include <vector>

#include "framemap/coherence.hpp"
#include "framemap/embeddings.hpp"
#include "framemap/extraction.hpp"
#include "framemap/rng.hpp"
#include "framemap/topicspace.hpp"

namespace {

using namespace framemap;

struct PairInputs {
  Corpus corpus;
  EmbeddingStore store;
  TopicModel topics;
};

PairInputs pair_inputs(size_t n, size_t dim) {
  Rng rng(7);
  std::vector<Document> docs(n);
  EmbeddingStore store(dim);
  int64_t ts = 0;
  for (size_t i = 0; i < n; ++i) {
    docs[i].id = "b" + std::to_string(i);
    docs[i].headline = "event " + std::to_string(i);
    ts += 3600 + static_cast<int64_t>(rng.next_below(86400));
    docs[i].timestamp = ts;
    docs[i].source = "wire";
    docs[i].frame = 1 + static_cast<int>(rng.next_below(3));
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.next_double() - 0.5;
    l2_normalize(v);
    store.insert(docs[i].id, v);
  }
  Corpus corpus(std::move(docs), FrameTaxonomy::gvfc(), true);
  TopicModel topics = build_topic_model(store, TopicOptions{});
  return {std::move(corpus), std::move(store), std::move(topics)};
}

std::vector<Point2D> random_points(size_t n) {
  Rng rng(11);
  std::vector<Point2D> pts(n);
  for (auto& p : pts) {
    p.x = 100.0 * rng.next_double();
    p.y = 100.0 * rng.next_double();
  }
  return pts;
}

void bm_coherence_parallel(benchmark::State& state) {
  const auto in = pair_inputs(static_cast<size_t>(state.range(0)), 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_coherence(in.corpus, in.store, in.topics));
}

void bm_coherence_serial(benchmark::State& state) {
  const auto in = pair_inputs(static_cast<size_t>(state.range(0)), 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_coherence_serial(in.corpus, in.store, in.topics));
}

void bm_kth_neighbor_parallel(benchmark::State& state) {
  const auto pts = random_points(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kth_neighbor_distances(pts, 2));
}

void bm_kth_neighbor_serial(benchmark::State& state) {
  const auto pts = random_points(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kth_neighbor_distances_serial(pts, 2));
}

void bm_storyline_solve(benchmark::State& state) {
  const auto in = pair_inputs(static_cast<size_t>(state.range(0)), 64);
  const CoherenceMatrix matrix = build_coherence(in.corpus, in.store, in.topics);
  ExtractionParams params;
  const LpModel model = build_lp(matrix, in.topics, in.corpus.docs().front().id,
                                 in.corpus.docs().back().id, params);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(model, params));
}

BENCHMARK(bm_coherence_parallel)->Arg(131)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_coherence_serial)->Arg(131)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kth_neighbor_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_kth_neighbor_serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_storyline_solve)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

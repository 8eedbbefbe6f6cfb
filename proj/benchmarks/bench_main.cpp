#include <benchmark/benchmark.h>

#include "scenekge/embedding.hpp"
#include "scenekge/enrichment.hpp"
#include "scenekge/ntriples.hpp"
#include "scenekge/rng.hpp"
#include "scenekge/scenegen.hpp"

using namespace scenekge;

namespace {

KnowledgeGraph scene_graph(int scenes) {
    GenConfig cfg;
    cfg.num_scenes = scenes;
    cfg.subscenes_per_scene = 40;
    cfg.seed = 1;
    return generate(cfg);
}

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

void BM_Score(benchmark::State& state, ModelKind model) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto h = random_vector(d, 1), t = random_vector(d, 3);
    const auto r = random_vector(model == ModelKind::Rescal ? d * d : d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(score(model, Norm::L1, h, r, t));
}
BENCHMARK_CAPTURE(BM_Score, transe, ModelKind::TransE)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(BM_Score, rescal, ModelKind::Rescal)->Arg(50)->Arg(200);
BENCHMARK_CAPTURE(BM_Score, hole, ModelKind::HolE)->Arg(50)->Arg(200);

void BM_CircularCorrelation(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto a = random_vector(d, 1), b = random_vector(d, 2);
    for (auto _ : state) benchmark::DoNotOptimize(circular_correlation(a, b));
}
BENCHMARK(BM_CircularCorrelation)->Arg(50)->Arg(200)->Arg(1000);

void BM_Enrichment(benchmark::State& state) {
    const KnowledgeGraph kg = scene_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(make_variant(kg, KgVariant::WithPaths));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kg.stats().triple_count));
}
BENCHMARK(BM_Enrichment)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Parse(benchmark::State& state) {
    const std::string text = serialize_document(scene_graph(10));
    for (auto _ : state) benchmark::DoNotOptimize(parse_document(text));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Parse)->Unit(benchmark::kMillisecond);

void BM_TrainEpoch(benchmark::State& state, ModelKind model) {
    const KnowledgeGraph kg = make_variant(scene_graph(5), KgVariant::WithPaths);
    TrainConfig cfg;
    cfg.model = model;
    cfg.dim = 50;
    cfg.epochs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(train(kg, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kg.stats().triple_count));
}
BENCHMARK_CAPTURE(BM_TrainEpoch, transe, ModelKind::TransE)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TrainEpoch, hole, ModelKind::HolE)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "deffuant/analysis.hpp"
#include "deffuant/dynamics.hpp"

using namespace deffuant;

namespace
{

const OpinionSpace unit_interval = OpinionSpace(ConvexSet::interval(0, 1), Norm::l2(1));

void BM_NextEvent(benchmark::State& state)
{
  Rng rng(1);
  const auto edges = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(next_event(rng, edges));
  }
}
BENCHMARK(BM_NextEvent)->Arg(10)->Arg(1000);

void BM_EngineFire(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const Graph g = generate(GraphSpec::complete(n), 0).graph;
  const OpinionSpace square(ConvexSet::box({0, 0}, {1, 1}), Norm::l2(2));
  Rng rng(2);
  SimParams params;
  params.tau = 0.3;
  Engine engine(g, square, initial_configuration(InitialDistribution::uniform(square), g, rng), params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.advance(rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineFire)->Arg(20)->Arg(100);

void BM_Step(benchmark::State& state)
{
  const Graph g(2, {{0, 1}});
  const auto c = Configuration::from_opinions(std::vector<Opinion>{{0.2, 0.1, 0.7}, {0.4, 0.3, 0.5}});
  const Norm norm = Norm::l2(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(c, g, {0, 1}, 1.0, 0.5, norm));
  }
}
BENCHMARK(BM_Step);

void BM_DetectAbsorption(benchmark::State& state)
{
  const auto side = static_cast<std::size_t>(state.range(0));
  const Graph g = generate(GraphSpec::torus(side, side), 0).graph;
  Configuration c(g.vertex_count(), 1);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    c.opinion(v)[0] = v < g.vertex_count() / 2 ? 0.0 : 0.9;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_absorption(c, g, Norm::l2(1), 0.5, 1e-3));
  }
}
BENCHMARK(BM_DetectAbsorption)->Arg(10)->Arg(50);

void BM_Run(benchmark::State& state)
{
  const Graph g = generate(GraphSpec::path(static_cast<std::size_t>(state.range(0))), 0).graph;
  const auto dist = InitialDistribution::uniform(unit_interval);
  SimParams params;
  params.tau = 0.8;
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = Rng::stream(3, i++);
    benchmark::DoNotOptimize(run(g, unit_interval, dist, params, rng));
  }
}
BENCHMARK(BM_Run)->Arg(10)->Arg(100);

} // namespace

BENCHMARK_MAIN();

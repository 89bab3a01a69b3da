#include <benchmark/benchmark.h>

#include <decosim/gossip.hpp>
#include <decosim/overlay.hpp>
#include <decosim/rng.hpp>
#include <decosim/sim.hpp>

using namespace decosim;

namespace {

void BM_EventQueue(benchmark::State& state) {
  const int events = static_cast<int>(state.range(0));
  RngStream rng(1, 0);
  for (auto _ : state) {
    Simulation sim;
    for (int i = 0; i < events; ++i) {
      sim.schedule(static_cast<Tick>(rng.next_below(1000)), [] {});
    }
    sim.run();
    benchmark::DoNotOptimize(sim.processed_count());
  }
  state.SetItemsProcessed(state.iterations() * events);
}
BENCHMARK(BM_EventQueue)->Arg(1000)->Arg(10000);

void BM_GenRandomRegular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(2, stream++);
    benchmark::DoNotOptimize(gen_random_regular(n, 6, rng));
  }
}
BENCHMARK(BM_GenRandomRegular)->Arg(100)->Arg(1000);

void BM_GenSmallWorld(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(3, stream++);
    benchmark::DoNotOptimize(gen_small_world(n, 6, 0.1, rng));
  }
}
BENCHMARK(BM_GenSmallWorld)->Arg(100)->Arg(1000);

void BM_GenScaleFree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(4, stream++);
    benchmark::DoNotOptimize(gen_scale_free(n, 2, rng));
  }
}
BENCHMARK(BM_GenScaleFree)->Arg(100)->Arg(1000);

void BM_Flood(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream graph_rng(5, 0);
  const OverlayGraph g = gen_small_world(n, 6, 0.1, graph_rng);
  GossipParams params;
  params.protocol = Protocol::fixed_probability;
  params.p = 1.0;
  params.ttl = 32;
  params.cache_size = 4;
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(5, ++stream);
    benchmark::DoNotOptimize(run_dissemination(g, 0, params, rng));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Flood)->Arg(100)->Arg(1000);

void BM_FixedProbability(benchmark::State& state) {
  RngStream graph_rng(6, 0);
  const OverlayGraph g = gen_small_world(1000, 6, 0.1, graph_rng);
  GossipParams params;
  params.protocol = Protocol::fixed_probability;
  params.p = static_cast<double>(state.range(0)) / 100.0;
  params.ttl = 16;
  params.cache_size = 4;
  std::uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(6, ++stream);
    benchmark::DoNotOptimize(run_dissemination(g, 0, params, rng));
  }
}
BENCHMARK(BM_FixedProbability)->Arg(25)->Arg(50)->Arg(75);

}  // namespace

BENCHMARK_MAIN();

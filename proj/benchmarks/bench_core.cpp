#include <benchmark/benchmark.h>

#include <random>

#include "manet/analytic.hpp"
#include "manet/mobility.hpp"
#include "manet/motion_entropy.hpp"
#include "manet/random_graph_mc.hpp"
#include "manet/topology_codec.hpp"

namespace {

manet::Trajectory make_trajectory(int n_random, int n_guided, int steps) {
  manet::MobilityConfig config;
  config.n_random = n_random;
  config.n_guided = n_guided;
  config.speed = 1.0;
  config.dt_step = 1.0;
  config.n_steps = steps;
  config.seed = 7;
  config.field = manet::VelocityField::rotation({50.0, 50.0}, 0.05);
  return manet::simulate(config, {100.0, 40.0});
}

void SimulateMixed(benchmark::State& state) {
  for (auto _ : state) {
    auto traj = make_trajectory(4, 4, int(state.range(0)));
    benchmark::DoNotOptimize(traj);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SimulateMixed)->Range(256, 4096)->Complexity();

void PopulationEntropy(benchmark::State& state) {
  const auto traj = make_trajectory(4, 4, int(state.range(0)));
  for (auto _ : state) {
    auto result = manet::population_entropy(traj, manet::full_window(traj));
    benchmark::DoNotOptimize(result);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(PopulationEntropy)->Range(256, 4096)->Complexity();

void TopologyCompression(benchmark::State& state) {
  const auto traj = make_trajectory(4, 4, int(state.range(0)));
  std::vector<manet::TopologyBitString> snapshots;
  for (int t = 0; t < traj.tick_count(); ++t)
    snapshots.push_back(manet::snapshot_adjacency(traj, t, 40.0));
  const auto bits = manet::concat_snapshots(snapshots);
  for (auto _ : state) {
    auto score = manet::inverse_compression_ratio(bits, "deflate");
    benchmark::DoNotOptimize(score);
  }
}
BENCHMARK(TopologyCompression)->Range(256, 4096);

void EpochAndShortestPath(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const int n = int(state.range(0));
  for (auto _ : state) {
    auto g = manet::sample_epoch(n, 0.05, rng);
    auto d = manet::shortest_path_length(g, 0, 1);
    benchmark::DoNotOptimize(d);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(EpochAndShortestPath)->Range(64, 1024)->Complexity();

void RouteFormationPmf(benchmark::State& state) {
  manet::GraphModel model;
  model.n = state.range(0);
  model.p = 0.05;
  model.w = 10.0;
  for (auto _ : state) {
    double sum = 0.0;
    for (long long k = 0; k <= model.n; ++k)
      sum += manet::route_formation_probability(model, k);
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(RouteFormationPmf)->Range(64, 512);

}  // namespace

BENCHMARK_MAIN();

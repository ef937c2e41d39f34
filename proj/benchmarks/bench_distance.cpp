#include <benchmark/benchmark.h>

#include <random>

#include "wiou/components.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/label_map.hpp"

namespace {

wiou::LabelMap checkered_map(int side, int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  wiou::LabelMap map;
  map.width = side;
  map.height = side;
  map.num_classes = classes;
  map.labels.resize(static_cast<std::size_t>(side) * static_cast<std::size_t>(side));
  for (auto& l : map.labels) {
    l = static_cast<wiou::ClassId>(rng() % static_cast<std::uint64_t>(classes));
  }
  return map;
}

void distance_transform(benchmark::State& state, wiou::Norm norm) {
  const int side = static_cast<int>(state.range(0));
  const wiou::LabelMap map = checkered_map(side, 4, 97);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::distance_map(map, 0, norm));
  }
  state.SetItemsProcessed(state.iterations() * map.size());
}

void bench_distance_l1(benchmark::State& state) { distance_transform(state, wiou::Norm::L1); }
void bench_distance_l2(benchmark::State& state) { distance_transform(state, wiou::Norm::L2); }
void bench_distance_linf(benchmark::State& state) {
  distance_transform(state, wiou::Norm::Linf);
}

void bench_connected_components(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const wiou::LabelMap map = checkered_map(side, 3, 131);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::connected_components(map, 0, 4));
  }
  state.SetItemsProcessed(state.iterations() * map.size());
}

void bench_combined_field(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const wiou::LabelMap map = checkered_map(side, 4, 53);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::combined_distance_field(map));
  }
  state.SetItemsProcessed(state.iterations() * map.size());
}

}  // namespace

BENCHMARK(bench_distance_l1)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(bench_distance_l2)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(bench_distance_linf)->Arg(256)->Arg(512)->Arg(1024);
BENCHMARK(bench_connected_components)->Arg(256)->Arg(1024);
BENCHMARK(bench_combined_field)->Arg(256)->Arg(512);

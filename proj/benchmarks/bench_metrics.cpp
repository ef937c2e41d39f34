#include <benchmark/benchmark.h>

#include "wiou/boundary.hpp"
#include "wiou/metrics.hpp"
#include "wiou/morphology.hpp"
#include "wiou/scene.hpp"
#include "wiou/weighting.hpp"

namespace {

// Road-scene pair at the full evaluation size used by the acceptance budget.
struct FullSizePair {
  wiou::LabelMap gt;
  wiou::LabelMap pred;

  FullSizePair() {
    wiou::SceneSpec spec;
    spec.name = "road";
    spec.width = 1242;
    spec.height = 375;
    spec.bands = {{0, 0.45}, {1, 0.15}, {2, 0.40}};
    spec.object.cls = 3;
    spec.object.shapes = {wiou::Rect{500.0, 250.0, 180, 70}, wiou::Disk{900.0, 240.0, 45.0},
                          wiou::ellipse_polygon(200.0, 230.0, 30.0, 80.0)};
    gt = wiou::generate_scene(spec);
    pred = wiou::morphological_op(gt, 3, wiou::MorphOp::Dilate, 2);
  }
};

const FullSizePair& full_pair() {
  static const FullSizePair pair;
  return pair;
}

void bench_evaluate_pair(benchmark::State& state) {
  const auto& pair = full_pair();
  wiou::EvalOptions opt;
  opt.alphas = {0.01, 0.1, 1.0, 10.0, 100.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::evaluate_pair(pair.gt, pair.pred, opt));
  }
  state.SetItemsProcessed(state.iterations() * pair.gt.size());
}

void bench_weight_map_alphas(benchmark::State& state) {
  const auto& pair = full_pair();
  const wiou::DistanceField field = wiou::combined_distance_field(pair.gt);
  const double alpha = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::weight_map(field, alpha));
  }
  state.SetItemsProcessed(state.iterations() * pair.gt.size());
}

void bench_edge_match(benchmark::State& state) {
  const auto& pair = full_pair();
  const wiou::BoundarySet gt_edges = wiou::extract_boundary(pair.gt, 3);
  const wiou::BoundarySet pred_edges = wiou::extract_boundary(pair.pred, 3);
  const double theta = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(wiou::edge_match(gt_edges, pred_edges, theta));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(gt_edges.size() + pred_edges.size()));
}

}  // namespace

BENCHMARK(bench_evaluate_pair)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_weight_map_alphas)->Arg(1)->Arg(100)->Arg(10000);
BENCHMARK(bench_edge_match)->Arg(1)->Arg(3)->Arg(10);

BENCHMARK_MAIN();

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiou/dataset.hpp"
#include "wiou/metrics.hpp"

namespace wiou {

// One metric sampled across a sequence of image pairs.
struct MetricSeries {
  std::string label;
  std::vector<double> values;
};

// Pairwise Pearson correlation and mean absolute difference between series.
// Correlations touching a zero-variance series are undefined; the diagonal is
// fixed at correlation 1, difference 0.
struct ComparisonMatrix {
  std::vector<std::string> labels;
  std::vector<std::optional<double>> correlations;  // row-major n x n
  std::vector<double> mean_abs_diff;                // row-major n x n

  std::size_t size() const { return labels.size(); }
  std::optional<double> correlation(std::size_t i, std::size_t j) const {
    return correlations[i * size() + j];
  }
  double difference(std::size_t i, std::size_t j) const { return mean_abs_diff[i * size() + j]; }
};

ComparisonMatrix compare_metrics(const std::vector<MetricSeries>& series);

struct BenchmarkOptions {
  std::vector<double> alphas{0.01, 0.1, 1.0, 10.0, 100.0};
  double theta = 3.0;
  Norm norm = Norm::L2;
  int connectivity = 4;
  int threads = 0;  // 0 = one worker per hardware core
};

struct TripletRow {
  std::string scene_id;
  std::string member;  // "boundary" | "interior" | "split"
  int error_count = 0;
  std::optional<double> iou;
  std::vector<std::optional<double>> wiou;  // aligned with BenchmarkOptions::alphas
  std::optional<double> edge_f1;
  std::optional<double> edge_recall;
};

struct BenchmarkResult {
  std::vector<std::string> image_ids;  // "scene01/erode5", ... in dataset order
  std::vector<MetricReport> reports;   // one per pair, dataset order
  std::vector<MetricSeries> series;    // IoU, wIoU per alpha, edge F1
  ComparisonMatrix matrix;
  std::vector<TripletRow> triplets;
};

// Evaluates every dataset pair (in parallel, results ordered by index),
// correlates the aggregate metric series, and appends the equal-error-triplet
// study for each scene.
BenchmarkResult run_benchmark(const Dataset& dataset, const BenchmarkOptions& options = {});

std::string comparison_to_json(const ComparisonMatrix& matrix);
std::string per_image_csv(const BenchmarkResult& result);
std::string triplet_csv(const BenchmarkResult& result);

}  // namespace wiou

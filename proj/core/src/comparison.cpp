#include "wiou/comparison.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "wiou/error.hpp"
#include "wiou/report_io.hpp"

namespace wiou {

namespace {

using Json = nlohmann::ordered_json;

// Single-pass co-moment accumulation; exact zero second moments flag a
// constant series, whose correlations are undefined.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0, m2x = 0.0, m2y = 0.0, cxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    mx += dx / n;
    my += dy / n;
    m2x += dx * (x[i] - mx);
    m2y += dy * (y[i] - my);
    cxy += dx * (y[i] - my);
  }
  if (m2x == 0.0 || m2y == 0.0) {
    return std::nullopt;
  }
  return cxy / std::sqrt(m2x * m2y);
}

double mean_abs_difference(const std::vector<double>& x, const std::vector<double>& y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::abs(x[i] - y[i]);
  }
  return sum / static_cast<double>(x.size());
}

std::string scene_tag(int scene_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene%02d", scene_index + 1);
  return buf;
}

void append_csv_value(std::string& out, const std::optional<double>& v) {
  out.push_back(',');
  if (v) {
    out += format_value(*v);
  }
}

}  // namespace

ComparisonMatrix compare_metrics(const std::vector<MetricSeries>& series) {
  if (series.size() < 2) {
    throw ValidationError("metric comparison needs at least two series, got " +
                          std::to_string(series.size()));
  }
  const std::size_t len = series[0].values.size();
  if (len < 3) {
    throw ValidationError("metric series must hold at least three values, got " +
                          std::to_string(len));
  }
  for (const MetricSeries& s : series) {
    if (s.values.size() != len) {
      throw ValidationError("series \"" + s.label + "\" holds " +
                            std::to_string(s.values.size()) + " values but \"" +
                            series[0].label + "\" holds " + std::to_string(len));
    }
  }
  const std::size_t n = series.size();
  ComparisonMatrix m;
  m.labels.reserve(n);
  for (const MetricSeries& s : series) {
    m.labels.push_back(s.label);
  }
  m.correlations.assign(n * n, std::nullopt);
  m.mean_abs_diff.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.correlations[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rho = pearson(series[i].values, series[j].values);
      const double d = mean_abs_difference(series[i].values, series[j].values);
      m.correlations[i * n + j] = rho;
      m.correlations[j * n + i] = rho;
      m.mean_abs_diff[i * n + j] = d;
      m.mean_abs_diff[j * n + i] = d;
    }
  }
  return m;
}

BenchmarkResult run_benchmark(const Dataset& dataset, const BenchmarkOptions& options) {
  if (dataset.pairs.empty()) {
    throw ValidationError("dataset has no image pairs");
  }
  EvalOptions eopt;
  eopt.alphas = options.alphas;
  eopt.theta = options.theta;
  eopt.norm = options.norm;
  eopt.connectivity = options.connectivity;

  BenchmarkResult result;
  result.reports.resize(dataset.pairs.size());
  result.image_ids.reserve(dataset.pairs.size());
  for (const DatasetPair& pair : dataset.pairs) {
    result.image_ids.push_back(pair.scene_id + "/" + pair.variant);
  }
  detail::parallel_for(dataset.pairs.size(), options.threads, [&](std::size_t i) {
    result.reports[i] = evaluate_pair(dataset.pairs[i].gt, dataset.pairs[i].pred, eopt);
  });

  const std::size_t na = options.alphas.size();
  result.series.resize(na + 2);
  result.series[0].label = "IoU";
  for (std::size_t k = 0; k < na; ++k) {
    result.series[1 + k].label = "wIoU@" + format_value(options.alphas[k]);
  }
  result.series[na + 1].label = "edgeF1";
  for (MetricSeries& s : result.series) {
    s.values.reserve(result.reports.size());
  }
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const ClassMetrics& agg = result.reports[i].aggregate;
    const auto require = [&](const std::optional<double>& v,
                             const std::string& label) {
      if (!v) {
        throw ValidationError("aggregate " + label + " is undefined for image " +
                              result.image_ids[i] + "; cannot form a comparison series");
      }
      return *v;
    };
    result.series[0].values.push_back(require(agg.iou, "IoU"));
    for (std::size_t k = 0; k < na; ++k) {
      result.series[1 + k].values.push_back(
          require(agg.wiou[k], result.series[1 + k].label));
    }
    result.series[na + 1].values.push_back(require(agg.edge_f1, "edge F1"));
  }
  result.matrix = compare_metrics(result.series);

  for (std::size_t s = 0; s < dataset.scenes.size(); ++s) {
    const SceneSpec& spec = dataset.scenes[s];
    if (spec.object.shapes.empty()) {
      continue;
    }
    const int errors = default_error_count(spec);
    const std::array<LabelMap, 3> preds = generate_equal_error_triplet(spec, errors);
    const LabelMap gt = generate_scene(spec);
    for (std::size_t j = 0; j < preds.size(); ++j) {
      const MetricReport rep = evaluate_pair(gt, preds[j], eopt);
      TripletRow row;
      row.scene_id = scene_tag(static_cast<int>(s));
      row.member = kTripletMembers[j];
      row.error_count = errors;
      row.iou = rep.aggregate.iou;
      row.wiou = rep.aggregate.wiou;
      row.edge_f1 = rep.aggregate.edge_f1;
      row.edge_recall = rep.aggregate.edge_recall;
      result.triplets.push_back(std::move(row));
    }
  }
  return result;
}

std::string comparison_to_json(const ComparisonMatrix& matrix) {
  Json j;
  j["labels"] = matrix.labels;
  Json corr = Json::array();
  Json diff = Json::array();
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    Json crow = Json::array();
    Json drow = Json::array();
    for (std::size_t k = 0; k < n; ++k) {
      const auto& c = matrix.correlation(i, k);
      crow.push_back(c ? Json(round12(*c)) : Json(nullptr));
      drow.push_back(round12(matrix.difference(i, k)));
    }
    corr.push_back(std::move(crow));
    diff.push_back(std::move(drow));
  }
  j["correlation"] = std::move(corr);
  j["mean_abs_diff"] = std::move(diff);
  return j.dump(2) + "\n";
}

std::string per_image_csv(const BenchmarkResult& result) {
  std::string out = "image";
  for (const MetricSeries& s : result.series) {
    out.push_back(',');
    out += s.label;
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < result.image_ids.size(); ++i) {
    out += result.image_ids[i];
    for (const MetricSeries& s : result.series) {
      out.push_back(',');
      out += format_value(s.values[i]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string triplet_csv(const BenchmarkResult& result) {
  std::string out = "scene,member,error_count,iou";
  for (std::size_t k = 1; k + 1 < result.series.size(); ++k) {
    out.push_back(',');
    out += result.series[k].label;  // the wIoU columns
  }
  out += ",edge_f1,edge_recall\n";
  for (const TripletRow& row : result.triplets) {
    out += row.scene_id;
    out.push_back(',');
    out += row.member;
    out.push_back(',');
    out += std::to_string(row.error_count);
    append_csv_value(out, row.iou);
    for (const auto& w : row.wiou) {
      append_csv_value(out, w);
    }
    append_csv_value(out, row.edge_f1);
    append_csv_value(out, row.edge_recall);
    out.push_back('\n');
  }
  return out;
}

}  // namespace wiou

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wiou/boundary.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/label_map.hpp"
#include "wiou/weighting.hpp"

namespace wiou {

// One-vs-rest pixel counts for a single class. Pixels whose ground-truth
// label is the ignore class are excluded from all four counts.
struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const LabelMap& gt, const LabelMap& pred, ClassId cls);

// Each ratio is undefined (nullopt) when its denominator has no support.
std::optional<double> precision(const ConfusionCounts& c);
std::optional<double> recall(const ConfusionCounts& c);
std::optional<double> f1_score(const ConfusionCounts& c);
std::optional<double> iou(const ConfusionCounts& c);

// Weighted intersection mass over weighted union mass for one class. The
// weight map comes from the ground truth's distance field alone, so the score
// is not symmetric in its arguments. Undefined when the union is empty or
// carries zero weight.
std::optional<double> weighted_iou(const LabelMap& gt, const LabelMap& pred,
                                   const WeightMap& wmap, ClassId cls);

struct EdgeMatchCounts {
  std::int64_t matched = 0;  // size of a maximum one-to-one matching
};

// Maximum-cardinality one-to-one matching between two boundary point sets
// where a pair may match only at Euclidean distance <= theta.
EdgeMatchCounts edge_match(const BoundarySet& gt_edges, const BoundarySet& pred_edges,
                           double theta);

struct EdgePrf {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
};

EdgePrf edge_prf(const LabelMap& gt, const LabelMap& pred, ClassId cls, double theta);

// Boundary-correspondence score without one-to-one matching: the harmonic
// mean of the fractions of each side's boundary pixels that lie within theta
// of the other side. Never below the matched edge F1 at the same theta.
std::optional<double> bf_score(const LabelMap& gt, const LabelMap& pred, ClassId cls,
                               double theta);

struct EvalOptions {
  std::vector<double> alphas{1.0};
  double theta = 3.0;
  Norm norm = Norm::L2;
  int connectivity = 4;
  NormalizeMode normalize_mode = NormalizeMode::Standard;
};

struct ClassMetrics {
  std::optional<double> iou;
  std::vector<std::optional<double>> wiou;  // aligned with EvalOptions::alphas
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> edge_precision;
  std::optional<double> edge_recall;
  std::optional<double> edge_f1;
  std::optional<double> bf_score;
};

struct MetricReport {
  int width = 0;
  int height = 0;
  EvalOptions options;
  std::map<ClassId, ClassMetrics> per_class;
  // Unweighted mean over classes present in the ground truth; undefined
  // per-class values are left out of each mean.
  ClassMetrics aggregate;
  std::vector<std::string> warnings;
};

// Full one-vs-rest evaluation of a prediction against a ground truth:
// distance fields and weight maps are derived from the ground truth once and
// reused across classes and alphas.
MetricReport evaluate_pair(const LabelMap& gt, const LabelMap& pred,
                           const EvalOptions& options = {});

}  // namespace wiou

#include "wiou/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edge_internal.hpp"
#include "wiou/error.hpp"
#include "wiou/report_io.hpp"

namespace wiou {

namespace {

void check_same_shape(const LabelMap& gt, const LabelMap& pred) {
  if (gt.width != pred.width || gt.height != pred.height) {
    throw ValidationError("gt is " + std::to_string(gt.width) + "x" + std::to_string(gt.height) +
                          " but pred is " + std::to_string(pred.width) + "x" +
                          std::to_string(pred.height));
  }
}

std::optional<double> ratio(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    return std::nullopt;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

struct MeanAcc {
  double sum = 0.0;
  int n = 0;

  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> mean() const {
    if (n == 0) {
      return std::nullopt;
    }
    return sum / n;
  }
};

}  // namespace

ConfusionCounts confusion(const LabelMap& gt, const LabelMap& pred, ClassId cls) {
  check_same_shape(gt, pred);
  const int nc = std::max(gt.num_classes, pred.num_classes);
  if (cls >= nc) {
    throw ValidationError("class " + std::to_string(cls) + " exceeds declared class count " +
                          std::to_string(nc));
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const ClassId g = gt.labels[i];
    if (gt.is_ignore(g)) {
      continue;
    }
    const bool in_gt = g == cls;
    const bool in_pred = pred.labels[i] == cls;
    if (in_gt && in_pred) {
      ++c.tp;
    } else if (in_gt) {
      ++c.fn;
    } else if (in_pred) {
      ++c.fp;
    } else {
      ++c.tn;
    }
  }
  return c;
}

std::optional<double> precision(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fp); }

std::optional<double> recall(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn); }

std::optional<double> f1_score(const ConfusionCounts& c) {
  return ratio(2 * c.tp, 2 * c.tp + c.fn + c.fp);
}

std::optional<double> iou(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn + c.fp); }

std::optional<double> weighted_iou(const LabelMap& gt, const LabelMap& pred,
                                   const WeightMap& wmap, ClassId cls) {
  check_same_shape(gt, pred);
  if (wmap.width != gt.width || wmap.height != gt.height) {
    throw ValidationError("weight map is " + std::to_string(wmap.width) + "x" +
                          std::to_string(wmap.height) + " but the label maps are " +
                          std::to_string(gt.width) + "x" + std::to_string(gt.height));
  }
  double inter_mass = 0.0;
  double union_mass = 0.0;
  std::int64_t union_pixels = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const ClassId g = gt.labels[i];
    if (gt.is_ignore(g)) {
      continue;
    }
    const bool in_gt = g == cls;
    const bool in_pred = pred.labels[i] == cls;
    if (!in_gt && !in_pred) {
      continue;
    }
    ++union_pixels;
    const double w = wmap.weights[i];
    union_mass += w;
    if (in_gt && in_pred) {
      inter_mass += w;
    }
  }
  if (union_pixels == 0 || union_mass <= 0.0) {
    return std::nullopt;
  }
  return inter_mass / union_mass;
}

MetricReport evaluate_pair(const LabelMap& gt, const LabelMap& pred, const EvalOptions& options) {
  gt.validate();
  pred.validate();
  check_same_shape(gt, pred);
  if (options.alphas.empty()) {
    throw ValidationError("at least one alpha is required");
  }
  for (double a : options.alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw ValidationError("alpha must be a positive finite number");
    }
  }
  if (!(options.theta >= 0.0) || !std::isfinite(options.theta)) {
    throw ValidationError("theta must be a non-negative finite number");
  }
  if (options.connectivity != 4 && options.connectivity != 8) {
    throw ValidationError("connectivity must be 4 or 8, got " +
                          std::to_string(options.connectivity));
  }

  MetricReport rep;
  rep.width = gt.width;
  rep.height = gt.height;
  rep.options = options;

  const int nc = std::max(gt.num_classes, pred.num_classes);
  const std::size_t n = gt.size();
  std::vector<char> in_gt(nc, 0), in_pred(nc, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const ClassId g = gt.labels[i];
    if (gt.is_ignore(g)) {
      continue;
    }
    in_gt[g] = 1;
    in_pred[pred.labels[i]] = 1;
  }

  const DistanceField combined = combined_distance_field(
      gt, options.norm, options.connectivity, options.normalize_mode, &rep.warnings);

  const std::size_t na = options.alphas.size();
  std::vector<WeightMap> wmaps;
  wmaps.reserve(na);
  for (double a : options.alphas) {
    wmaps.push_back(weight_map(combined, a));
  }

  std::vector<ConfusionCounts> counts(nc);
  std::int64_t valid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const ClassId g = gt.labels[i];
    if (gt.is_ignore(g)) {
      continue;
    }
    ++valid;
    const ClassId p = pred.labels[i];
    if (g == p) {
      ++counts[g].tp;
    } else {
      ++counts[g].fn;
      ++counts[p].fp;
    }
  }
  for (ConfusionCounts& c : counts) {
    c.tn = valid - c.tp - c.fn - c.fp;
  }

  std::vector<double> tpw(na * nc, 0.0), fnw(na * nc, 0.0), fpw(na * nc, 0.0);
  for (std::size_t k = 0; k < na; ++k) {
    const std::vector<double>& wts = wmaps[k].weights;
    double* tpk = tpw.data() + k * nc;
    double* fnk = fnw.data() + k * nc;
    double* fpk = fpw.data() + k * nc;
    for (std::size_t i = 0; i < n; ++i) {
      const ClassId g = gt.labels[i];
      if (gt.is_ignore(g)) {
        continue;
      }
      const ClassId p = pred.labels[i];
      const double w = wts[i];
      if (g == p) {
        tpk[g] += w;
      } else {
        fnk[g] += w;
        fpk[p] += w;
      }
    }
  }

  for (int c = 0; c < nc; ++c) {
    const ClassId cls = static_cast<ClassId>(c);
    if (gt.is_ignore(cls)) {
      continue;
    }
    if (!in_gt[c] && !in_pred[c]) {
      continue;
    }
    ClassMetrics m;
    m.iou = iou(counts[c]);
    m.precision = precision(counts[c]);
    m.recall = recall(counts[c]);
    m.f1 = f1_score(counts[c]);
    m.wiou.resize(na);
    const std::int64_t union_pixels = counts[c].tp + counts[c].fn + counts[c].fp;
    for (std::size_t k = 0; k < na; ++k) {
      if (union_pixels == 0) {
        m.wiou[k] = std::nullopt;
        continue;
      }
      const double denom = tpw[k * nc + c] + fnw[k * nc + c] + fpw[k * nc + c];
      if (denom > 0.0) {
        m.wiou[k] = tpw[k * nc + c] / denom;
      } else {
        m.wiou[k] = std::nullopt;
        rep.warnings.push_back("class " + std::to_string(c) +
                               ": weighted union mass is zero at alpha=" +
                               format_value(options.alphas[k]) + "; weighted IoU undefined");
      }
    }
    const BoundarySet gt_edges =
        c < gt.num_classes ? detail::filter_ignored(extract_boundary(gt, cls), gt)
                           : BoundarySet{};
    const BoundarySet pred_edges =
        c < pred.num_classes ? detail::filter_ignored(extract_boundary(pred, cls), gt)
                             : BoundarySet{};
    if (gt_edges.empty() && pred_edges.empty()) {
      rep.warnings.push_back("class " + std::to_string(c) +
                             ": no boundary pixels in either map; edge metrics undefined");
    }
    const EdgePrf ep = detail::edge_prf_sets(gt_edges, pred_edges, options.theta);
    m.edge_precision = ep.precision;
    m.edge_recall = ep.recall;
    m.edge_f1 = ep.f1;
    m.bf_score = detail::bf_sets(gt_edges, pred_edges, options.theta);
    rep.per_class.emplace(cls, std::move(m));
  }

  MeanAcc iou_acc, prec_acc, rec_acc, f1_acc, ep_acc, er_acc, ef_acc, bf_acc;
  std::vector<MeanAcc> wiou_acc(na);
  for (const auto& [cls, m] : rep.per_class) {
    if (!in_gt[cls]) {
      continue;
    }
    const auto note_undefined = [&](const std::optional<double>& v, const char* name) {
      if (!v) {
        rep.warnings.push_back("class " + std::to_string(cls) + ": " + name +
                               " undefined; excluded from the aggregate mean");
      }
    };
    note_undefined(m.iou, "iou");
    note_undefined(m.precision, "precision");
    note_undefined(m.recall, "recall");
    note_undefined(m.f1, "f1");
    note_undefined(m.edge_precision, "edge precision");
    note_undefined(m.edge_recall, "edge recall");
    note_undefined(m.edge_f1, "edge f1");
    note_undefined(m.bf_score, "bf score");
    iou_acc.add(m.iou);
    prec_acc.add(m.precision);
    rec_acc.add(m.recall);
    f1_acc.add(m.f1);
    ep_acc.add(m.edge_precision);
    er_acc.add(m.edge_recall);
    ef_acc.add(m.edge_f1);
    bf_acc.add(m.bf_score);
    for (std::size_t k = 0; k < na; ++k) {
      if (!m.wiou[k]) {
        rep.warnings.push_back("class " + std::to_string(cls) + ": weighted IoU at alpha=" +
                               format_value(options.alphas[k]) +
                               " undefined; excluded from the aggregate mean");
      }
      wiou_acc[k].add(m.wiou[k]);
    }
  }
  rep.aggregate.iou = iou_acc.mean();
  rep.aggregate.precision = prec_acc.mean();
  rep.aggregate.recall = rec_acc.mean();
  rep.aggregate.f1 = f1_acc.mean();
  rep.aggregate.edge_precision = ep_acc.mean();
  rep.aggregate.edge_recall = er_acc.mean();
  rep.aggregate.edge_f1 = ef_acc.mean();
  rep.aggregate.bf_score = bf_acc.mean();
  rep.aggregate.wiou.resize(na);
  for (std::size_t k = 0; k < na; ++k) {
    rep.aggregate.wiou[k] = wiou_acc[k].mean();
  }
  return rep;
}

}  // namespace wiou

// End-to-end acceptance checks. Each criterion prints a single pass/fail line;
// run one with --criterion N or everything with no arguments.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "procrun.hpp"
#include "tempdir.hpp"
#include "wiou/comparison.hpp"
#include "wiou/dataset.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/image_io.hpp"
#include "wiou/metrics.hpp"
#include "wiou/morphology.hpp"
#include "wiou/report_io.hpp"
#include "wiou/scene.hpp"

namespace {

std::string g_cli;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (detail.empty()) detail = what;
  }
};

// 1: the linear-time transforms agree with exhaustive search on every pixel.
Outcome fast_transform_equals_brute_force() {
  Outcome out;
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 300 && out.ok; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 32);
    const int h = 1 + static_cast<int>(rng() % 32);
    const int k = 2 + static_cast<int>(rng() % 4);
    const wiou::LabelMap map = oracle::random_map(rng, w, h, k);
    const auto want = oracle::brute_force_distances(map);
    for (wiou::Norm norm : {wiou::Norm::L1, wiou::Norm::L2, wiou::Norm::Linf}) {
      for (int cls = 0; cls < k && out.ok; ++cls) {
        const auto raw = wiou::distance_map(map, static_cast<wiou::ClassId>(cls), norm);
        if (raw.background_empty) continue;
        for (std::size_t i = 0; i < map.size(); ++i) {
          const std::int64_t expected =
              map.labels[i] == cls ? oracle::brute_force_cost(want[i], norm) : 0;
          if (raw.cost[i] != expected) {
            out.fail("mismatch on a " + std::to_string(w) + "x" + std::to_string(h) +
                     " map, class " + std::to_string(cls));
            break;
          }
          ++checked;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) out.fail("took " + std::to_string(elapsed) + " s, budget is 10 s");
  out.note("300 maps, 3 norms, " + std::to_string(checked) + " pixel comparisons in " +
           std::to_string(elapsed) + " s");
  return out;
}

// 2: with a vanishing decay rate the weighted score converges to plain IoU.
Outcome tiny_alpha_matches_plain_iou() {
  Outcome out;
  const auto start = Clock::now();
  const auto pairs = wiou::generate_dataset(wiou::builtin_scenes());
  wiou::EvalOptions opt;
  opt.alphas = {1e-6};
  double worst = 0.0;
  for (const auto& pair : pairs) {
    const wiou::MetricReport rep = wiou::evaluate_pair(pair.gt, pair.pred, opt);
    for (const auto& [cls, m] : rep.per_class) {
      if (!m.iou || !m.wiou[0]) continue;
      const double gap = std::abs(*m.wiou[0] - *m.iou);
      worst = std::max(worst, gap);
      if (gap >= 1e-5) {
        out.fail(pair.scene_id + "/" + pair.variant + " class " + std::to_string(cls) +
                 ": |wIoU - IoU| = " + std::to_string(gap));
      }
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 30.0) out.fail("took " + std::to_string(elapsed) + " s, budget is 30 s");
  out.note("33 pairs, worst gap " + wiou::format_value(worst) + " in " +
           std::to_string(elapsed) + " s");
  return out;
}

// 3: perfect agreement scores exactly 1, disjoint masks exactly 0.
Outcome identity_and_disjoint_are_exact() {
  Outcome out;
  wiou::EvalOptions opt;
  opt.alphas = {0.01, 1.0, 100.0};
  for (const auto& spec : wiou::builtin_scenes()) {
    const wiou::LabelMap scene = wiou::generate_scene(spec);
    const wiou::MetricReport rep = wiou::evaluate_pair(scene, scene, opt);
    for (const auto& [cls, m] : rep.per_class) {
      const std::vector<std::optional<double>> defined = {
          m.iou, m.precision, m.recall, m.f1, m.wiou[0], m.wiou[1], m.wiou[2],
          m.edge_precision, m.edge_recall, m.edge_f1, m.bf_score};
      for (const auto& v : defined) {
        if (v && *v != 1.0) {
          out.fail(spec.name + " class " + std::to_string(cls) + ": identity scored " +
                   wiou::format_value(*v));
        }
      }
    }
  }

  // Two maps whose class-1 masks do not overlap at all.
  wiou::LabelMap left = wiou::LabelMap::filled(24, 16, 0, 2);
  wiou::LabelMap right = left;
  for (int y = 4; y < 12; ++y) {
    for (int x = 2; x < 10; ++x) left.labels[left.index(x, y)] = 1;
    for (int x = 14; x < 22; ++x) right.labels[right.index(x, y)] = 1;
  }
  const wiou::MetricReport rep = wiou::evaluate_pair(left, right, opt);
  const auto& m = rep.per_class.at(1);
  if (*m.iou != 0.0) out.fail("disjoint IoU is " + wiou::format_value(*m.iou));
  for (const auto& w : m.wiou) {
    if (*w != 0.0) out.fail("disjoint wIoU is " + wiou::format_value(*w));
  }
  out.note("3 identity scenes and a disjoint pair, all extremes exact");
  return out;
}

// 4: same error budget, different placement: IoU blind, wIoU discriminates.
Outcome equal_error_triplets_separate() {
  Outcome out;
  wiou::EvalOptions opt;
  opt.alphas = {1.0};
  std::string summary;
  for (const auto& spec : wiou::builtin_scenes()) {
    const wiou::LabelMap gt = wiou::generate_scene(spec);
    const int budget = wiou::default_error_count(spec);
    const auto members = wiou::generate_equal_error_triplet(spec, budget);
    std::array<double, 3> iou_vals{}, wiou_vals{};
    for (std::size_t m = 0; m < members.size(); ++m) {
      const wiou::MetricReport rep = wiou::evaluate_pair(gt, members[m], opt);
      const auto& cm = rep.per_class.at(spec.object.cls);
      if (!cm.iou || !cm.wiou[0]) {
        out.fail(spec.name + ": undefined metric in the triplet");
        continue;
      }
      iou_vals[m] = *cm.iou;
      wiou_vals[m] = *cm.wiou[0];
    }
    for (std::size_t m = 1; m < 3; ++m) {
      if (std::abs(iou_vals[m] - iou_vals[0]) > 1e-12) {
        out.fail(spec.name + ": IoU values differ by " +
                 wiou::format_value(std::abs(iou_vals[m] - iou_vals[0])));
      }
    }
    const double d01 = std::abs(wiou_vals[0] - wiou_vals[1]);
    const double d02 = std::abs(wiou_vals[0] - wiou_vals[2]);
    const double d12 = std::abs(wiou_vals[1] - wiou_vals[2]);
    if (d01 <= 1e-3 || d02 <= 1e-3 || d12 <= 1e-3) {
      out.fail(spec.name + ": wIoU separation too small (" + wiou::format_value(d01) + ", " +
               wiou::format_value(d02) + ", " + wiou::format_value(d12) + ")");
    }
    if (!(wiou_vals[0] < wiou_vals[1] && wiou_vals[0] < wiou_vals[2])) {
      out.fail(spec.name + ": boundary-smeared member is not the lowest");
    }
    summary += (summary.empty() ? "" : "; ") + spec.name + " IoU=" +
               wiou::format_value(iou_vals[0]) + " wIoU b/i/s=" +
               wiou::format_value(wiou_vals[0]) + "/" + wiou::format_value(wiou_vals[1]) +
               "/" + wiou::format_value(wiou_vals[2]);
  }
  out.note(summary);
  return out;
}

// 5: over the 33-pair study, small alpha tracks IoU and large alpha tracks
// the edge measure.
Outcome study_matches_expected_correlations() {
  Outcome out;
  const wiou::Dataset dataset =
      wiou::build_dataset(wiou::builtin_scenes(), wiou::builtin_palette());
  wiou::BenchmarkOptions opt;
  const wiou::BenchmarkResult result = wiou::run_benchmark(dataset, opt);

  // Series order: IoU, wIoU@0.01, wIoU@0.1, wIoU@1, wIoU@10, wIoU@100, edgeF1.
  const std::size_t iou_i = 0, lo_i = 1, hi_i = 5, edge_i = 6;
  const auto rho_lo = result.matrix.correlation(lo_i, iou_i);
  const auto rho_hi = result.matrix.correlation(hi_i, iou_i);
  if (!rho_lo || !rho_hi) {
    out.fail("correlation with IoU is undefined");
    return out;
  }
  if (!(*rho_lo > *rho_hi)) {
    out.fail("rho(wIoU@0.01, IoU) = " + wiou::format_value(*rho_lo) +
             " is not above rho(wIoU@100, IoU) = " + wiou::format_value(*rho_hi));
  }
  const double d_hi_edge = result.matrix.difference(hi_i, edge_i);
  const double d_lo_edge = result.matrix.difference(lo_i, edge_i);
  if (!(d_hi_edge < d_lo_edge)) {
    out.fail("D(wIoU@100, edgeF1) = " + wiou::format_value(d_hi_edge) +
             " is not below D(wIoU@0.01, edgeF1) = " + wiou::format_value(d_lo_edge));
  }
  const double d_lo_iou = result.matrix.difference(lo_i, iou_i);
  if (!(d_lo_iou < 0.01)) {
    out.fail("D(wIoU@0.01, IoU) = " + wiou::format_value(d_lo_iou) + " is not below 0.01");
  }
  out.note("rho " + wiou::format_value(*rho_lo) + " > " + wiou::format_value(*rho_hi) +
           ", D(hi,edge) " + wiou::format_value(d_hi_edge) + " < D(lo,edge) " +
           wiou::format_value(d_lo_edge) + ", D(lo,IoU) " + wiou::format_value(d_lo_iou));
  return out;
}

// 6: the tolerance forgives a 2 px shift, flags a 5 px shift, and the relaxed
// boundary score never drops below the matched one.
Outcome tolerance_behaves_at_theta_three() {
  Outcome out;
  const int w = 64, h = 32;
  const auto band = [&](int x0) {
    wiou::LabelMap map = wiou::LabelMap::filled(w, h, 0, 2);
    for (int y = 0; y < h; ++y) {
      for (int x = x0; x < x0 + 12; ++x) map.labels[map.index(x, y)] = 1;
    }
    return map;
  };
  const wiou::LabelMap gt = band(20);
  const auto near = wiou::edge_prf(gt, band(22), 1, 3.0);
  if (!near.f1 || *near.f1 != 1.0) {
    out.fail("2 px shift scored " + (near.f1 ? wiou::format_value(*near.f1) : "n/a"));
  }
  const auto far = wiou::edge_prf(gt, band(25), 1, 3.0);
  if (!far.f1 || !(*far.f1 < 1.0)) {
    out.fail("5 px shift scored " + (far.f1 ? wiou::format_value(*far.f1) : "n/a"));
  }

  const auto pairs = wiou::generate_dataset(wiou::builtin_scenes());
  wiou::EvalOptions opt;
  opt.alphas = {1.0};
  int compared = 0;
  for (const auto& pair : pairs) {
    const wiou::MetricReport rep = wiou::evaluate_pair(pair.gt, pair.pred, opt);
    for (const auto& [cls, m] : rep.per_class) {
      if (!m.edge_f1 || !m.bf_score) continue;
      ++compared;
      if (*m.bf_score < *m.edge_f1 - 1e-12) {
        out.fail(pair.scene_id + "/" + pair.variant + " class " + std::to_string(cls) +
                 ": bf " + wiou::format_value(*m.bf_score) + " below edge F1 " +
                 wiou::format_value(*m.edge_f1));
      }
    }
  }
  out.note("shift checks passed, bf >= edge F1 on " + std::to_string(compared) +
           " class scores");
  return out;
}

// 7: the matcher's cardinality is maximal, witnessed by exhaustive augmentation.
Outcome matcher_is_maximal() {
  Outcome out;
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    const int ng = static_cast<int>(rng() % 41);
    const int np = static_cast<int>(rng() % 41);
    wiou::BoundarySet gt, pred;
    for (int i = 0; i < ng; ++i) {
      gt.points.push_back({static_cast<int>(rng() % 24), static_cast<int>(rng() % 24)});
    }
    for (int i = 0; i < np; ++i) {
      pred.points.push_back({static_cast<int>(rng() % 24), static_cast<int>(rng() % 24)});
    }
    const double theta = (trial % 2) ? 3.0 : 1.0 + static_cast<double>(rng() % 5);
    const auto got = wiou::edge_match(gt, pred, theta).matched;
    const auto want = oracle::max_matching(gt.points, pred.points, theta);
    if (got != want) {
      out.fail("trial " + std::to_string(trial) + ": matched " + std::to_string(got) +
               ", maximum is " + std::to_string(want));
    }
  }
  out.note("30 random point-set pairs, cardinalities all maximal");
  return out;
}

// 8: a full-size pair evaluates inside the time budget single-threaded.
Outcome runtime_fits_budget() {
  Outcome out;
  const int w = 1242, h = 375;
  wiou::SceneSpec spec;
  spec.name = "road";
  spec.width = w;
  spec.height = h;
  spec.bands = {{0, 0.45}, {1, 0.15}, {2, 0.40}};
  spec.object.cls = 3;
  spec.object.shapes = {wiou::Rect{500.0, 250.0, 180, 70}, wiou::Disk{900.0, 240.0, 45.0},
                        wiou::ellipse_polygon(200.0, 230.0, 30.0, 80.0)};
  const wiou::LabelMap gt = wiou::generate_scene(spec);
  const wiou::LabelMap pred = wiou::morphological_op(gt, 3, wiou::MorphOp::Dilate, 2);

  wiou::EvalOptions opt;
  opt.alphas = {0.01, 0.1, 1.0, 10.0, 100.0};
  // Warm-up to keep page faults out of the timed run.
  (void)wiou::evaluate_pair(gt, pred, opt);
  const auto start = Clock::now();
  const wiou::MetricReport rep = wiou::evaluate_pair(gt, pred, opt);
  const double elapsed = seconds_since(start);
  if (rep.per_class.empty()) out.fail("empty report");
  if (elapsed >= 1.0) {
    out.fail("evaluate_pair took " + std::to_string(elapsed) + " s, budget is 1 s");
  }

  const auto dt_start = Clock::now();
  int reps = 0;
  for (; seconds_since(dt_start) < 0.5; ++reps) {
    for (int c = 0; c < gt.num_classes; ++c) {
      (void)wiou::distance_map(gt, static_cast<wiou::ClassId>(c));
    }
  }
  const double dt_elapsed = seconds_since(dt_start);
  const double mpix =
      static_cast<double>(gt.size()) * gt.num_classes * reps / dt_elapsed / 1e6;
  if (mpix < 50.0) {
    out.fail("distance transform ran at " + std::to_string(mpix) + " Mpixel/s, need 50");
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "1242x375 pair with 5 alphas in %.3f s, transform at %.0f Mpixel/s",
                elapsed, mpix);
  out.note(buf);
  return out;
}

// 9: the command-line pipeline is byte-for-byte reproducible.
Outcome cli_runs_are_reproducible() {
  Outcome out;
  if (g_cli.empty()) {
    out.fail("no --cli-bin given");
    return out;
  }
  testutil::TempDir tmp("repro");
  const auto run_once = [&](const std::string& tag) {
    const std::string data = tmp.str(tag + "-data");
    const std::string res = tmp.str(tag + "-res");
    const auto gen = testutil::run_process(g_cli, {"gen-dataset", "--out", data, "--seed", "7"});
    if (gen.exit_code != 0) out.fail(tag + ": gen-dataset exited " + std::to_string(gen.exit_code));
    const auto bench = testutil::run_process(
        g_cli, {"benchmark", "--dataset", data, "--out", res});
    if (bench.exit_code != 0) out.fail(tag + ": benchmark exited " + std::to_string(bench.exit_code));
    return std::make_pair(data, res);
  };
  const auto [data1, res1] = run_once("a");
  const auto [data2, res2] = run_once("b");
  if (!out.ok) return out;

  int files = 0;
  namespace fs = std::filesystem;
  for (const auto& entry : fs::recursive_directory_iterator(data1)) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const auto rel = fs::relative(entry.path(), data1);
    if (wiou::read_binary_file(entry.path()) != wiou::read_binary_file(fs::path(data2) / rel)) {
      out.fail("dataset file " + rel.string() + " differs between runs");
    }
  }
  for (const char* name : {"comparison.json", "per_image.csv", "triplet.csv"}) {
    if (wiou::read_text_file(fs::path(res1) / name) !=
        wiou::read_text_file(fs::path(res2) / name)) {
      out.fail(std::string(name) + " differs between runs");
    }
  }
  out.note(std::to_string(files) + " dataset files and 3 result files identical across runs");
  return out;
}

struct Criterion {
  int id;
  const char* label;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else if (arg.rfind("--criterion=", 0) == 0) {
      selected = std::atoi(arg.c_str() + 12);
    } else if (arg.rfind("--cli-bin=", 0) == 0) {
      g_cli = arg.substr(10);
    } else if (arg == "--cli-bin" && i + 1 < argc) {
      g_cli = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--cli-bin PATH]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "distance transform equals brute force", fast_transform_equals_brute_force},
      {2, "alpha -> 0 converges to IoU", tiny_alpha_matches_plain_iou},
      {3, "identity and disjoint extremes exact", identity_and_disjoint_are_exact},
      {4, "equal-error triplets separated by wIoU", equal_error_triplets_separate},
      {5, "correlation study matches expectations", study_matches_expected_correlations},
      {6, "edge tolerance at theta = 3", tolerance_behaves_at_theta_three},
      {7, "edge matching is maximal", matcher_is_maximal},
      {8, "runtime budget on full-size input", runtime_fits_budget},
      {9, "seeded CLI runs are byte-identical", cli_runs_are_reproducible},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (selected != 0 && c.id != selected) continue;
    const Outcome outcome = c.run();
    std::printf("criterion %d: %s - %s (%s)\n", c.id, outcome.ok ? "PASS" : "FAIL", c.label,
                outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

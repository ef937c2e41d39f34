#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wiou/comparison.hpp"
#include "wiou/dataset.hpp"
#include "wiou/error.hpp"
#include "wiou/image_io.hpp"
#include "wiou/metrics.hpp"
#include "wiou/report_io.hpp"
#include "wiou/scene.hpp"
#include "wiou/weighting.hpp"

namespace wiou::cli {

namespace {

namespace fs = std::filesystem;

Norm parse_norm(const std::string& name) {
  if (name == "l1") {
    return Norm::L1;
  }
  if (name == "linf") {
    return Norm::Linf;
  }
  return Norm::L2;
}

int threads_from_env() {
  const char* v = std::getenv("WIOU_THREADS");
  if (!v || !*v) {
    return 0;
  }
  char* end = nullptr;
  const long t = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || t < 0 || t > 4096) {
    throw ValidationError("WIOU_THREADS must be an integer in [0, 4096], got \"" +
                          std::string(v) + "\"");
  }
  return static_cast<int>(t);
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
}

struct EvalArgs {
  std::string gt, pred, palette, out;
  std::vector<double> alphas;
  double theta = 3.0;
  std::string norm = "l2";
  int connectivity = 4;
  bool shifted = false;
  std::string format = "json";
};

struct WeightsArgs {
  std::string gt, palette;
  std::string out = ".";
  std::vector<double> alphas;
  std::string norm = "l2";
  int connectivity = 4;
  bool shifted = false;
};

struct GenArgs {
  std::string out;
  std::uint64_t seed = 1;
};

struct BenchArgs {
  std::string dataset;
  std::string out = ".";
  bool generate = false;
  std::uint64_t seed = 1;
  std::vector<double> alphas;
  double theta = 3.0;
  std::string norm = "l2";
  int connectivity = 4;
};

EvalOptions make_eval_options(const std::vector<double>& alphas, double theta,
                              const std::string& norm, int connectivity, bool shifted) {
  EvalOptions opt;
  opt.alphas = alphas.empty() ? std::vector<double>{1.0} : alphas;
  opt.theta = theta;
  opt.norm = parse_norm(norm);
  opt.connectivity = connectivity;
  opt.normalize_mode = shifted ? NormalizeMode::Shifted : NormalizeMode::Standard;
  return opt;
}

int run_eval(const EvalArgs& args) {
  const Palette palette = Palette::load(args.palette);
  const LabelMap gt = load_label_image(args.gt, palette);
  const LabelMap pred = load_label_image(args.pred, palette);
  const EvalOptions opt =
      make_eval_options(args.alphas, args.theta, args.norm, args.connectivity, args.shifted);
  const MetricReport report = evaluate_pair(gt, pred, opt);
  print_warnings(report.warnings);
  if (!args.out.empty()) {
    write_text_file(args.out, args.format == "csv" ? report_to_csv(report, &palette)
                                                   : report_to_json(report, &palette));
  }
  std::cout << summary_line(report) << "\n";
  return 0;
}

int run_weights(const WeightsArgs& args) {
  const Palette palette = Palette::load(args.palette);
  const LabelMap gt = load_label_image(args.gt, palette);
  std::vector<std::string> warnings;
  const DistanceField field = combined_distance_field(
      gt, parse_norm(args.norm), args.connectivity,
      args.shifted ? NormalizeMode::Shifted : NormalizeMode::Standard, &warnings);
  print_warnings(warnings);
  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) {
    throw IoError("cannot create output directory " + args.out + ": " + ec.message());
  }
  const std::vector<double> alphas = args.alphas.empty() ? std::vector<double>{1.0} : args.alphas;
  for (const double alpha : alphas) {
    const WeightMap wmap = weight_map(field, alpha);
    const fs::path file = fs::path(args.out) / ("weights_alpha" + format_value(alpha) + ".png");
    write_binary_file(file, encode_weight_png(wmap));
    std::cout << "wrote " << file.string() << "\n";
  }
  return 0;
}

int run_gen_dataset(const GenArgs& args) {
  DatasetOptions opt;
  opt.seed = args.seed;
  const Dataset dataset = build_dataset(builtin_scenes(), builtin_palette(), opt);
  write_dataset(args.out, dataset);
  std::cout << "wrote " << dataset.pairs.size() << " image pairs to " << args.out << "\n";
  return 0;
}

int run_benchmark(const BenchArgs& args) {
  Dataset dataset;
  if (fs::exists(fs::path(args.dataset) / "manifest.json")) {
    dataset = read_dataset(args.dataset);
  } else if (args.generate) {
    DatasetOptions opt;
    opt.seed = args.seed;
    dataset = build_dataset(builtin_scenes(), builtin_palette(), opt);
    write_dataset(args.dataset, dataset);
  } else {
    throw IoError("no dataset manifest at " + args.dataset +
                  " (pass --generate to create one there)");
  }
  BenchmarkOptions opt;
  if (!args.alphas.empty()) {
    opt.alphas = args.alphas;
  }
  opt.theta = args.theta;
  opt.norm = parse_norm(args.norm);
  opt.connectivity = args.connectivity;
  opt.threads = threads_from_env();
  const BenchmarkResult result = run_benchmark(dataset, opt);
  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) {
    throw IoError("cannot create output directory " + args.out + ": " + ec.message());
  }
  const fs::path out_dir(args.out);
  write_text_file(out_dir / "comparison.json", comparison_to_json(result.matrix));
  write_text_file(out_dir / "per_image.csv", per_image_csv(result));
  write_text_file(out_dir / "triplet.csv", triplet_csv(result));
  std::cout << "evaluated " << result.image_ids.size() << " pairs; wrote comparison.json, "
            << "per_image.csv, triplet.csv to " << args.out << "\n";
  return 0;
}

void add_metric_flags(CLI::App* cmd, std::vector<double>& alphas, double* theta,
                      std::string& norm, int& connectivity) {
  cmd->add_option("--alpha", alphas, "weight decay rate; repeatable")
      ->check(CLI::PositiveNumber);
  if (theta) {
    cmd->add_option("--theta", *theta, "edge match tolerance in pixels")
        ->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--norm", norm, "distance norm")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
  cmd->add_option("--connectivity", connectivity, "instance connectivity")
      ->check(CLI::IsMember({4, 8}));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"segmentation evaluation with boundary-aware pixel weighting"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "score a prediction against a ground truth");
  eval->add_option("--gt", eval_args.gt, "ground-truth label image")->required();
  eval->add_option("--pred", eval_args.pred, "predicted label image")->required();
  eval->add_option("--palette", eval_args.palette, "palette JSON file")->required();
  add_metric_flags(eval, eval_args.alphas, &eval_args.theta, eval_args.norm,
                   eval_args.connectivity);
  eval->add_flag("--shifted-distance", eval_args.shifted,
                 "normalize distances as (d-1)/(max-1)");
  eval->add_option("--out", eval_args.out, "write the full report here");
  eval->add_option("--format", eval_args.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));

  WeightsArgs weights_args;
  CLI::App* weights = app.add_subcommand("weights", "export weight-map images");
  weights->add_option("--gt", weights_args.gt, "ground-truth label image")->required();
  weights->add_option("--palette", weights_args.palette, "palette JSON file")->required();
  add_metric_flags(weights, weights_args.alphas, nullptr, weights_args.norm,
                   weights_args.connectivity);
  weights->add_flag("--shifted-distance", weights_args.shifted,
                    "normalize distances as (d-1)/(max-1)");
  weights->add_option("--out", weights_args.out, "output directory");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-dataset", "generate the synthetic street dataset");
  gen->add_option("--out", gen_args.out, "dataset directory")->required();
  gen->add_option("--seed", gen_args.seed, "jitter seed");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("benchmark", "run the metric comparison study");
  bench->add_option("--dataset", bench_args.dataset, "dataset directory")->required();
  bench->add_flag("--generate", bench_args.generate,
                  "generate the dataset there if it does not exist");
  bench->add_option("--seed", bench_args.seed, "jitter seed when generating");
  add_metric_flags(bench, bench_args.alphas, &bench_args.theta, bench_args.norm,
                   bench_args.connectivity);
  bench->add_option("--out", bench_args.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      return run_eval(eval_args);
    }
    if (weights->parsed()) {
      return run_weights(weights_args);
    }
    if (gen->parsed()) {
      return run_gen_dataset(gen_args);
    }
    return run_benchmark(bench_args);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wiou::cli

#include "wiou/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "backfill.hpp"
#include "wiou/components.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/error.hpp"
#include "wiou/image_io.hpp"
#include "wiou/morphology.hpp"

namespace wiou {

namespace {

using Json = nlohmann::ordered_json;

// Uniform draw in [0, 1) built from the generator's top 53 bits, so the
// stream does not depend on library distribution internals.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::mt19937_64 scene_stream(std::uint64_t seed, int scene_index) {
  return std::mt19937_64(seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(scene_index) + 1));
}

std::string scene_tag(int scene_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene%02d", scene_index + 1);
  return buf;
}

std::string variant_dir(int variant_index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "variant%02d", variant_index);
  return buf;
}

std::vector<std::string> variant_tags(int levels) {
  std::vector<std::string> tags;
  for (int k = levels; k >= 1; --k) {
    tags.push_back("erode" + std::to_string(k));
  }
  tags.push_back("base");
  for (int k = 1; k <= levels; ++k) {
    tags.push_back("dilate" + std::to_string(k));
  }
  return tags;
}

void check_options(const DatasetOptions& opt) {
  if (opt.levels < 0) {
    throw ValidationError("levels must be non-negative, got " + std::to_string(opt.levels));
  }
  if (!(opt.flip_probability >= 0.0) || !(opt.flip_probability <= 1.0)) {
    throw ValidationError("flip probability must lie in [0, 1]");
  }
  if (!(opt.jitter_band >= 0.0)) {
    throw ValidationError("jitter band must be non-negative");
  }
}

// Binary mask of the object class, for measuring distances on either side of
// its boundary.
LabelMap object_mask(const LabelMap& map, ClassId cls) {
  LabelMap bin;
  bin.width = map.width;
  bin.height = map.height;
  bin.num_classes = 2;
  bin.labels.resize(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    bin.labels[i] = map.labels[i] == cls ? 1 : 0;
  }
  return bin;
}

// Each pixel within jitter_band of the object boundary (on either side)
// flips with flip_probability: outside pixels become the object, inside
// pixels fall to the nearest other class. One draw per band pixel, row-major.
LabelMap jittered_prediction(const LabelMap& gt, ClassId cls, const DatasetOptions& opt,
                             std::mt19937_64& rng) {
  const LabelMap bin = object_mask(gt, cls);
  const RawDistanceMap inside = distance_map(bin, 1, Norm::L2);
  const RawDistanceMap outside = distance_map(bin, 0, Norm::L2);
  const double band_sq = opt.jitter_band * opt.jitter_band;
  LabelMap out = gt;
  if (inside.background_empty || outside.background_empty) {
    return out;  // no boundary on one side, nothing to jitter
  }
  for (int y = 0; y < gt.height; ++y) {
    for (int x = 0; x < gt.width; ++x) {
      const std::size_t i = gt.index(x, y);
      if (gt.labels[i] == cls) {
        if (static_cast<double>(inside.cost[i]) <= band_sq && unit_draw(rng) < opt.flip_probability) {
          out.labels[i] = detail::nearest_other_label(gt, cls, x, y, inside.cost[i]);
        }
      } else if (outside.cost[i] != 0 && static_cast<double>(outside.cost[i]) <= band_sq &&
                 unit_draw(rng) < opt.flip_probability) {
        out.labels[i] = cls;
      }
    }
  }
  return out;
}

struct TripletPlan {
  std::vector<std::size_t> ascending;   // object pixels, nearest-boundary first
  std::vector<std::size_t> descending;  // object pixels, deepest first
  std::vector<double> value;            // normalized distance per pixel index
  ClassId target = 0;
};

TripletPlan plan_triplet(const LabelMap& gt, ClassId cls) {
  const RawDistanceMap raw = distance_map(gt, cls, Norm::L2);
  if (raw.background_empty) {
    throw ValidationError("object class covers the whole scene; no neighbor class to flip to");
  }
  const InstanceMap inst = connected_components(gt, cls, 4);
  const DistanceField field = normalize_per_instance(raw, inst, NormalizeMode::Standard);

  TripletPlan plan;
  plan.value.assign(gt.size(), 0.0);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt.labels[i] == cls) {
      plan.ascending.push_back(i);
      plan.value[i] = field.values[i];
    }
  }
  if (plan.ascending.empty()) {
    throw ValidationError("scene has no pixels of the object class");
  }

  // Every error flips to the same class: the one most often adjacent to the
  // object, so the three variants keep identical per-class confusion counts.
  std::vector<std::int64_t> adjacency(std::max(gt.num_classes, 1), 0);
  for (const std::size_t i : plan.ascending) {
    const int x = static_cast<int>(i) % gt.width;
    const int y = static_cast<int>(i / static_cast<std::size_t>(gt.width));
    const auto count = [&](int nx, int ny) {
      if (gt.in_bounds(nx, ny) && gt.at(nx, ny) != cls) {
        ++adjacency[gt.at(nx, ny)];
      }
    };
    count(x - 1, y);
    count(x + 1, y);
    count(x, y - 1);
    count(x, y + 1);
  }
  std::int64_t best = 0;
  for (int c = 0; c < gt.num_classes; ++c) {
    if (adjacency[c] > best) {
      best = adjacency[c];
      plan.target = static_cast<ClassId>(c);
    }
  }
  if (best == 0) {
    throw ValidationError("object class touches no other class");
  }

  const auto by_value = [&](std::size_t a, std::size_t b) {
    return plan.value[a] != plan.value[b] ? plan.value[a] < plan.value[b] : a < b;
  };
  std::sort(plan.ascending.begin(), plan.ascending.end(), by_value);
  plan.descending.assign(plan.ascending.rbegin(), plan.ascending.rend());
  return plan;
}

bool sets_detached(const LabelMap& gt, const std::vector<std::size_t>& strip,
                   const std::vector<std::size_t>& blob) {
  std::vector<std::uint8_t> in_strip(gt.size(), 0);
  for (const std::size_t i : strip) {
    in_strip[i] = 1;
  }
  for (const std::size_t i : blob) {
    const int x = static_cast<int>(i) % gt.width;
    const int y = static_cast<int>(i / static_cast<std::size_t>(gt.width));
    const auto touches = [&](int nx, int ny) {
      return gt.in_bounds(nx, ny) && in_strip[gt.index(nx, ny)] != 0;
    };
    if (touches(x - 1, y) || touches(x + 1, y) || touches(x, y - 1) || touches(x, y + 1)) {
      return false;
    }
  }
  return true;
}

bool triplet_feasible(const LabelMap& gt, const TripletPlan& plan, int error_count) {
  const std::size_t k = static_cast<std::size_t>(error_count);
  if (error_count < 2 || k > plan.ascending.size()) {
    return false;
  }
  // The deepest k pixels must lie strictly deeper than the shallowest k, so
  // the three error placements are genuinely different sets.
  if (!(plan.value[plan.descending[k - 1]] > plan.value[plan.ascending[k - 1]])) {
    return false;
  }
  const std::size_t boundary_part = (k + 1) / 2;
  const std::vector<std::size_t> strip(plan.ascending.begin(),
                                       plan.ascending.begin() + boundary_part);
  const std::vector<std::size_t> blob(plan.descending.begin(),
                                      plan.descending.begin() + (k - boundary_part));
  return sets_detached(gt, strip, blob);
}

}  // namespace

std::vector<DatasetPair> generate_dataset(const std::vector<SceneSpec>& scenes,
                                          const DatasetOptions& options) {
  if (scenes.empty()) {
    throw ValidationError("dataset needs at least one scene");
  }
  check_options(options);
  std::vector<DatasetPair> pairs;
  pairs.reserve(scenes.size() * (2 * static_cast<std::size_t>(options.levels) + 1));
  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const SceneSpec& spec = scenes[s];
    const LabelMap gt = generate_scene(spec);
    std::mt19937_64 rng = scene_stream(options.seed, static_cast<int>(s));
    const LabelMap base = jittered_prediction(gt, spec.object.cls, options, rng);
    const std::string tag = scene_tag(static_cast<int>(s));
    const auto push = [&](const std::string& variant, LabelMap pred) {
      pairs.push_back({static_cast<int>(s), tag, variant, gt, std::move(pred)});
    };
    for (int k = options.levels; k >= 1; --k) {
      push("erode" + std::to_string(k), morphological_op(base, spec.object.cls, MorphOp::Erode, k));
    }
    push("base", base);
    for (int k = 1; k <= options.levels; ++k) {
      push("dilate" + std::to_string(k),
           morphological_op(base, spec.object.cls, MorphOp::Dilate, k));
    }
  }
  return pairs;
}

std::array<LabelMap, 3> generate_equal_error_triplet(const SceneSpec& spec, int error_count) {
  const LabelMap gt = generate_scene(spec);
  if (spec.object.shapes.empty()) {
    throw ValidationError("equal-error triplet needs a scene with an object");
  }
  const ClassId cls = spec.object.cls;
  const TripletPlan plan = plan_triplet(gt, cls);
  if (!triplet_feasible(gt, plan, error_count)) {
    throw ValidationError("error count " + std::to_string(error_count) +
                          " cannot keep the three error placements distinct and detached for "
                          "scene " + spec.name);
  }
  const std::size_t k = static_cast<std::size_t>(error_count);
  const auto apply = [&](const std::vector<std::size_t>& pixels) {
    LabelMap pred = gt;
    for (const std::size_t i : pixels) {
      pred.labels[i] = plan.target;
    }
    return pred;
  };
  const std::size_t boundary_part = (k + 1) / 2;
  std::vector<std::size_t> split(plan.ascending.begin(), plan.ascending.begin() + boundary_part);
  split.insert(split.end(), plan.descending.begin(),
               plan.descending.begin() + (k - boundary_part));
  return {
      apply({plan.ascending.begin(), plan.ascending.begin() + k}),
      apply({plan.descending.begin(), plan.descending.begin() + k}),
      apply(split),
  };
}

int default_error_count(const SceneSpec& spec) {
  const LabelMap gt = generate_scene(spec);
  if (spec.object.shapes.empty()) {
    throw ValidationError("equal-error triplet needs a scene with an object");
  }
  const TripletPlan plan = plan_triplet(gt, spec.object.cls);
  const auto area = static_cast<std::int64_t>(plan.ascending.size());
  int k = static_cast<int>(std::min<std::int64_t>(
      area, std::max<std::int64_t>(8, std::llround(0.05 * static_cast<double>(area)))));
  for (; k >= 2; --k) {
    if (triplet_feasible(gt, plan, k)) {
      return k;
    }
  }
  throw ValidationError("no feasible equal-error count for scene " + spec.name);
}

namespace {

Json shape_to_json(const Shape& shape) {
  Json j;
  if (const Rect* r = std::get_if<Rect>(&shape)) {
    j["type"] = "rect";
    j["cx"] = r->cx;
    j["cy"] = r->cy;
    j["width"] = r->width;
    j["height"] = r->height;
    return j;
  }
  if (const Disk* d = std::get_if<Disk>(&shape)) {
    j["type"] = "disk";
    j["cx"] = d->cx;
    j["cy"] = d->cy;
    j["radius"] = d->radius;
    return j;
  }
  const Polygon& p = std::get<Polygon>(shape);
  j["type"] = "polygon";
  Json verts = Json::array();
  for (const auto& [x, y] : p.vertices) {
    verts.push_back(Json::array({x, y}));
  }
  j["vertices"] = std::move(verts);
  return j;
}

Shape shape_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "rect") {
    return Rect{j.at("cx").get<double>(), j.at("cy").get<double>(), j.at("width").get<int>(),
                j.at("height").get<int>()};
  }
  if (type == "disk") {
    return Disk{j.at("cx").get<double>(), j.at("cy").get<double>(), j.at("radius").get<double>()};
  }
  if (type == "polygon") {
    Polygon p;
    for (const auto& v : j.at("vertices")) {
      p.vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
    return p;
  }
  throw ValidationError("unknown shape type \"" + type + "\" in manifest");
}

Json scene_to_json(const SceneSpec& spec) {
  Json j;
  j["name"] = spec.name;
  j["width"] = spec.width;
  j["height"] = spec.height;
  j["num_classes"] = spec.num_classes;
  Json bands = Json::array();
  for (const Band& b : spec.bands) {
    bands.push_back(Json{{"class", b.cls}, {"fraction", b.fraction}});
  }
  j["bands"] = std::move(bands);
  Json object;
  object["class"] = spec.object.cls;
  Json shapes = Json::array();
  for (const Shape& s : spec.object.shapes) {
    shapes.push_back(shape_to_json(s));
  }
  object["shapes"] = std::move(shapes);
  j["object"] = std::move(object);
  return j;
}

SceneSpec scene_from_json(const Json& j) {
  SceneSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.width = j.at("width").get<int>();
  spec.height = j.at("height").get<int>();
  spec.num_classes = j.at("num_classes").get<int>();
  for (const auto& b : j.at("bands")) {
    spec.bands.push_back({b.at("class").get<ClassId>(), b.at("fraction").get<double>()});
  }
  const auto& object = j.at("object");
  spec.object.cls = object.at("class").get<ClassId>();
  for (const auto& s : object.at("shapes")) {
    spec.object.shapes.push_back(shape_from_json(s));
  }
  return spec;
}

}  // namespace

Dataset build_dataset(const std::vector<SceneSpec>& scenes, const Palette& palette,
                      const DatasetOptions& options) {
  Dataset ds;
  ds.scenes = scenes;
  ds.palette = palette;
  ds.options = options;
  ds.pairs = generate_dataset(scenes, options);
  return ds;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create dataset directory " + dir.string() + ": " + ec.message());
  }
  dataset.palette.save(dir / "palette.json");

  const std::vector<std::string> tags = variant_tags(dataset.options.levels);
  Json manifest;
  manifest["seed"] = dataset.options.seed;
  manifest["levels"] = dataset.options.levels;
  manifest["flip_probability"] = dataset.options.flip_probability;
  manifest["jitter_band"] = dataset.options.jitter_band;
  manifest["palette"] = "palette.json";
  Json scenes = Json::array();
  for (const SceneSpec& spec : dataset.scenes) {
    scenes.push_back(scene_to_json(spec));
  }
  manifest["scenes"] = std::move(scenes);
  Json pairs = Json::array();
  for (const DatasetPair& pair : dataset.pairs) {
    const auto tag_it = std::find(tags.begin(), tags.end(), pair.variant);
    if (tag_it == tags.end()) {
      throw ValidationError("pair variant \"" + pair.variant +
                            "\" is not produced by levels=" +
                            std::to_string(dataset.options.levels));
    }
    const std::string rel =
        pair.scene_id + "/" + variant_dir(static_cast<int>(tag_it - tags.begin()));
    const std::filesystem::path pair_dir = dir / rel;
    std::filesystem::create_directories(pair_dir, ec);
    if (ec) {
      throw IoError("cannot create " + pair_dir.string() + ": " + ec.message());
    }
    save_label_image(pair_dir / "gt.png", pair.gt, dataset.palette);
    save_label_image(pair_dir / "pred.png", pair.pred, dataset.palette);
    pairs.push_back(Json{{"scene", pair.scene_id}, {"variant", pair.variant}, {"dir", rel}});
  }
  manifest["pairs"] = std::move(pairs);
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

Dataset read_dataset(const std::filesystem::path& dir) {
  Json manifest;
  try {
    manifest = Json::parse(read_text_file(dir / "manifest.json"));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest is not valid JSON: " + std::string(e.what()));
  }
  Dataset ds;
  try {
    ds.options.seed = manifest.at("seed").get<std::uint64_t>();
    ds.options.levels = manifest.at("levels").get<int>();
    ds.options.flip_probability = manifest.at("flip_probability").get<double>();
    ds.options.jitter_band = manifest.at("jitter_band").get<double>();
    ds.palette = Palette::load(dir / manifest.at("palette").get<std::string>());
    for (const auto& s : manifest.at("scenes")) {
      ds.scenes.push_back(scene_from_json(s));
    }
    for (const auto& p : manifest.at("pairs")) {
      DatasetPair pair;
      pair.scene_id = p.at("scene").get<std::string>();
      pair.variant = p.at("variant").get<std::string>();
      const std::filesystem::path pair_dir = dir / p.at("dir").get<std::string>();
      pair.gt = load_label_image(pair_dir / "gt.png", ds.palette);
      pair.pred = load_label_image(pair_dir / "pred.png", ds.palette);
      if (pair.scene_id.size() > 5 && pair.scene_id.rfind("scene", 0) == 0) {
        pair.scene_index = std::atoi(pair.scene_id.c_str() + 5) - 1;
      }
      ds.pairs.push_back(std::move(pair));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest is missing required fields: " + std::string(e.what()));
  }
  return ds;
}

}  // namespace wiou

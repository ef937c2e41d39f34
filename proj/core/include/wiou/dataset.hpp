#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wiou/label_map.hpp"
#include "wiou/palette.hpp"
#include "wiou/scene.hpp"

namespace wiou {

struct DatasetOptions {
  std::uint64_t seed = 1;
  int levels = 5;                 // erosion/dilation depths per side of the base
  double flip_probability = 0.3;
  double jitter_band = 2.0;       // Euclidean radius around the object boundary

  friend bool operator==(const DatasetOptions&, const DatasetOptions&) = default;
};

struct DatasetPair {
  int scene_index = 0;
  std::string scene_id;  // "scene01", ...
  std::string variant;   // "erode5".."erode1", "base", "dilate1".."dilate5"
  LabelMap gt;
  LabelMap pred;
};

// Per scene: one boundary-jittered base prediction plus `levels` erosions and
// `levels` dilations of the base's object. Pairs come out scene-major, each
// scene ordered erode5..erode1, base, dilate1..dilate5.
std::vector<DatasetPair> generate_dataset(const std::vector<SceneSpec>& scenes,
                                          const DatasetOptions& options = {});

// Three predictions that miss exactly `error_count` object pixels each, all
// relabeled to the same neighboring class, differing only in where the errors
// sit: hugging the object boundary, as a compact blob at the deepest
// interior, or split between a boundary strip and a detached interior blob.
// Per-class confusion counts are identical across the three.
std::array<LabelMap, 3> generate_equal_error_triplet(const SceneSpec& spec, int error_count);
inline constexpr std::array<const char*, 3> kTripletMembers{"boundary", "interior", "split"};

// A feasible error count for the scene, around 5% of the object's area.
int default_error_count(const SceneSpec& spec);

struct Dataset {
  std::vector<SceneSpec> scenes;
  Palette palette;
  DatasetOptions options;
  std::vector<DatasetPair> pairs;
};

Dataset build_dataset(const std::vector<SceneSpec>& scenes, const Palette& palette,
                      const DatasetOptions& options = {});

// On-disk layout: <dir>/manifest.json, <dir>/palette.json and
// <dir>/scene##/variant##/{gt.png,pred.png} in pair order. Writing is
// byte-deterministic; read_dataset restores an equal Dataset.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);
Dataset read_dataset(const std::filesystem::path& dir);

}  // namespace wiou

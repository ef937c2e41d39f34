#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wiou/components.hpp"
#include "wiou/label_map.hpp"

namespace wiou {

enum class Norm { L1, L2, Linf };

// Exact distance-to-nearest-background per pixel of one class, stored in
// integer form: squared distances for L2, plain distances for L1 and Linf.
// Background pixels hold 0. When the class covers the whole image there is no
// background to measure against; `background_empty` flags that case.
struct RawDistanceMap {
  int width = 0;
  int height = 0;
  Norm norm = Norm::L2;
  ClassId cls = 0;
  bool background_empty = false;
  std::vector<std::int64_t> cost;

  double distance_at(std::size_t i) const;
};

RawDistanceMap distance_map(const LabelMap& map, ClassId cls, Norm norm = Norm::L2);

enum class NormalizeMode {
  Standard,  // distance / per-instance max distance
  Shifted,   // (distance - 1) / (per-instance max distance - 1)
};

// Per-pixel normalized boundary distance in [0, 1]; 0 outside the class.
// Combined fields additionally mark pixels excluded from evaluation.
struct DistanceField {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  std::vector<std::uint8_t> excluded;  // empty when nothing is excluded

  bool excluded_at(std::size_t i) const { return !excluded.empty() && excluded[i] != 0; }
};

DistanceField normalize_per_instance(const RawDistanceMap& raw, const InstanceMap& instances,
                                     NormalizeMode mode = NormalizeMode::Standard);

// Merges per-class fields into one field over the whole map: each pixel takes
// the value of its own class's field. Ignore-class pixels are marked excluded;
// any other pixel without a field is an error.
DistanceField combine_fields(const std::map<ClassId, DistanceField>& fields, const LabelMap& map);

// Distance fields of every class present in the map (ignore excluded),
// normalized per instance and merged: the full normalized-distance field of a
// labeling. Degenerate whole-image classes are noted in `warnings` when given.
DistanceField combined_distance_field(const LabelMap& map, Norm norm = Norm::L2,
                                      int connectivity = 4,
                                      NormalizeMode mode = NormalizeMode::Standard,
                                      std::vector<std::string>* warnings = nullptr);

// 16-bit grayscale PNG, value * 65535 rounded; excluded pixels render as 0.
std::vector<std::uint8_t> encode_distance_png(const DistanceField& field);

}  // namespace wiou

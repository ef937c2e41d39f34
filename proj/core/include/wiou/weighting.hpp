#pragma once

#include <cstdint>
#include <vector>

#include "wiou/distance_transform.hpp"

namespace wiou {

// Per-pixel evaluation weight exp(-alpha * normalized_distance), so weights
// fall in [exp(-alpha), 1] and interior pixels count less as alpha grows.
// Excluded pixels carry weight 0.
struct WeightMap {
  int width = 0;
  int height = 0;
  double alpha = 1.0;
  std::vector<double> weights;
};

WeightMap weight_map(const DistanceField& field, double alpha);

// 8-bit grayscale PNG, weight * 255 rounded.
std::vector<std::uint8_t> encode_weight_png(const WeightMap& wmap);

}  // namespace wiou

#include "wiou/weighting.hpp"

#include <cmath>
#include <string>

#include "png_codec.hpp"
#include "wiou/error.hpp"

namespace wiou {

WeightMap weight_map(const DistanceField& field, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be a positive finite number");
  }
  if (field.width <= 0 || field.height <= 0 ||
      field.values.size() != static_cast<std::size_t>(field.width) * field.height) {
    throw ValidationError("distance field shape is inconsistent");
  }
  WeightMap out;
  out.width = field.width;
  out.height = field.height;
  out.alpha = alpha;
  out.weights.resize(field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    out.weights[i] = field.excluded_at(i) ? 0.0 : std::exp(-alpha * field.values[i]);
  }
  return out;
}

std::vector<std::uint8_t> encode_weight_png(const WeightMap& wmap) {
  if (wmap.width <= 0 || wmap.height <= 0 ||
      wmap.weights.size() != static_cast<std::size_t>(wmap.width) * wmap.height) {
    throw ValidationError("weight map shape is inconsistent");
  }
  std::vector<std::uint8_t> gray(wmap.weights.size());
  for (std::size_t i = 0; i < wmap.weights.size(); ++i) {
    gray[i] = static_cast<std::uint8_t>(std::lround(wmap.weights[i] * 255.0));
  }
  return detail::encode_png_gray8(wmap.width, wmap.height, gray.data());
}

}  // namespace wiou

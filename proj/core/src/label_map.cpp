#include "wiou/label_map.hpp"

#include <string>

#include "wiou/error.hpp"

namespace wiou {

LabelMap LabelMap::filled(int width, int height, ClassId fill, int num_classes,
                          std::optional<ClassId> ignore) {
  if (width <= 0 || height <= 0) {
    throw ValidationError("label map dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  LabelMap map;
  map.width = width;
  map.height = height;
  map.num_classes = num_classes;
  map.ignore_id = ignore;
  map.labels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  map.validate();
  return map;
}

void LabelMap::validate() const {
  if (width <= 0 || height <= 0) {
    throw ValidationError("label map dimensions must be positive, got " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (labels.size() != expected) {
    throw ValidationError("label buffer holds " + std::to_string(labels.size()) +
                          " entries, expected " + std::to_string(expected) + " for " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  if (num_classes <= 0) {
    throw ValidationError("label map must declare at least one class");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) {
      const int x = static_cast<int>(i) % width;
      const int y = static_cast<int>(i / static_cast<std::size_t>(width));
      throw ValidationError("label " + std::to_string(labels[i]) + " at (" + std::to_string(x) +
                            ", " + std::to_string(y) + ") exceeds declared class count " +
                            std::to_string(num_classes));
    }
  }
  if (ignore_id && *ignore_id >= num_classes) {
    throw ValidationError("ignore id " + std::to_string(*ignore_id) +
                          " exceeds declared class count " + std::to_string(num_classes));
  }
}

}  // namespace wiou

#pragma once

#include <cstdint>
#include <vector>

#include "wiou/label_map.hpp"

namespace wiou {

// Connected components of one class. Id 0 marks pixels outside the class;
// component ids 1..count are assigned by each component's first pixel in
// row-major scan order.
struct InstanceMap {
  int width = 0;
  int height = 0;
  std::uint32_t count = 0;
  std::vector<std::uint32_t> ids;

  std::uint32_t at(int x, int y) const {
    return ids[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x)];
  }
};

InstanceMap connected_components(const LabelMap& map, ClassId cls, int connectivity = 4);

}  // namespace wiou

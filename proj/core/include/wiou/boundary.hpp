#pragma once

#include <vector>

#include "wiou/label_map.hpp"

namespace wiou {

// Pixels of a class with at least one in-image four-neighbor of a different
// class, ordered by (y, x). The image border alone never makes a pixel a
// boundary pixel.
struct BoundarySet {
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

BoundarySet extract_boundary(const LabelMap& map, ClassId cls);

}  // namespace wiou

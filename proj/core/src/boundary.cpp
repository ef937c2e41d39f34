#include "wiou/boundary.hpp"

#include <string>

#include "wiou/error.hpp"

namespace wiou {

BoundarySet extract_boundary(const LabelMap& map, ClassId cls) {
  if (cls >= map.num_classes) {
    throw ValidationError("class " + std::to_string(cls) + " exceeds declared class count " +
                          std::to_string(map.num_classes));
  }
  const int w = map.width;
  const int h = map.height;
  BoundarySet out;
  for (int y = 0; y < h; ++y) {
    const ClassId* row = map.labels.data() + map.index(0, y);
    for (int x = 0; x < w; ++x) {
      if (row[x] != cls) {
        continue;
      }
      const bool edge = (x > 0 && row[x - 1] != cls) || (x + 1 < w && row[x + 1] != cls) ||
                        (y > 0 && map.labels[map.index(x, y - 1)] != cls) ||
                        (y + 1 < h && map.labels[map.index(x, y + 1)] != cls);
      if (edge) {
        out.points.push_back({x, y});
      }
    }
  }
  return out;
}

}  // namespace wiou

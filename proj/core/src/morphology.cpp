#include "wiou/morphology.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "backfill.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/error.hpp"

namespace wiou {

namespace detail {

ClassId nearest_other_label(const LabelMap& map, ClassId cls, int x, int y,
                            std::int64_t sq_dist) {
  const int r = static_cast<int>(std::lround(std::floor(std::sqrt(static_cast<double>(sq_dist)))));
  bool found = false;
  ClassId best = 0;
  const auto consider = [&](int nx, int ny) {
    if (!map.in_bounds(nx, ny)) {
      return;
    }
    const ClassId c = map.at(nx, ny);
    if (c == cls) {
      return;
    }
    if (!found || c < best) {
      found = true;
      best = c;
    }
  };
  for (int dx = 0; dx <= r; ++dx) {
    const std::int64_t rem = sq_dist - static_cast<std::int64_t>(dx) * dx;
    if (rem < 0) {
      break;
    }
    const int dy = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rem))));
    if (static_cast<std::int64_t>(dy) * dy != rem) {
      continue;
    }
    consider(x + dx, y + dy);
    if (dy != 0) {
      consider(x + dx, y - dy);
    }
    if (dx != 0) {
      consider(x - dx, y + dy);
      if (dy != 0) {
        consider(x - dx, y - dy);
      }
    }
  }
  if (!found) {
    throw std::logic_error("no pixel of another class at the reported distance");
  }
  return best;
}

}  // namespace detail

namespace {

std::vector<std::uint8_t> class_mask(const LabelMap& map, ClassId cls) {
  std::vector<std::uint8_t> mask(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    mask[i] = map.labels[i] == cls ? 1 : 0;
  }
  return mask;
}

// One 3x3 erosion step; pixels outside the image count as background.
std::vector<std::uint8_t> erode_step(const std::vector<std::uint8_t>& mask, int w, int h) {
  std::vector<std::uint8_t> out(mask.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) {
        continue;
      }
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      bool keep = true;
      for (int dy = -1; dy <= 1 && keep; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!mask[i + static_cast<std::size_t>(dy) * w + dx]) {
            keep = false;
            break;
          }
        }
      }
      out[i] = keep ? 1 : 0;
    }
  }
  return out;
}

std::vector<std::uint8_t> dilate_step(const std::vector<std::uint8_t>& mask, int w, int h) {
  std::vector<std::uint8_t> out(mask.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      bool hit = false;
      for (int dy = -1; dy <= 1 && !hit; ++dy) {
        const int ny = y + dy;
        if (ny < 0 || ny >= h) {
          continue;
        }
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          if (nx < 0 || nx >= w) {
            continue;
          }
          if (mask[static_cast<std::size_t>(ny) * w + nx]) {
            hit = true;
            break;
          }
        }
      }
      out[i] = hit ? 1 : 0;
    }
  }
  return out;
}

}  // namespace

LabelMap morphological_op(const LabelMap& map, ClassId cls, MorphOp op, int level) {
  map.validate();
  if (cls >= map.num_classes) {
    throw ValidationError("class " + std::to_string(cls) + " exceeds declared class count " +
                          std::to_string(map.num_classes));
  }
  if (level < 0) {
    throw ValidationError("morphology level must be non-negative, got " + std::to_string(level));
  }
  LabelMap out = map;
  if (level == 0) {
    return out;
  }
  const int w = map.width;
  const int h = map.height;
  std::vector<std::uint8_t> mask = class_mask(map, cls);

  if (op == MorphOp::Dilate) {
    for (int k = 0; k < level; ++k) {
      mask = dilate_step(mask, w, h);
    }
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (mask[i]) {
        out.labels[i] = cls;
      }
    }
    return out;
  }

  for (int k = 0; k < level; ++k) {
    mask = erode_step(mask, w, h);
  }
  const RawDistanceMap raw = distance_map(map, cls, Norm::L2);
  if (raw.background_empty) {
    // Nothing of another class exists to take over eroded pixels; the label
    // map cannot change.
    return out;
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = map.index(x, y);
      if (map.labels[i] == cls && !mask[i]) {
        out.labels[i] = detail::nearest_other_label(map, cls, x, y, raw.cost[i]);
      }
    }
  }
  return out;
}

}  // namespace wiou

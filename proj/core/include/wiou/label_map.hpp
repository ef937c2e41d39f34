#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace wiou {

using ClassId = std::uint16_t;

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// Dense per-pixel class labels, row-major, origin top-left, x right, y down.
struct LabelMap {
  int width = 0;
  int height = 0;
  int num_classes = 0;
  std::optional<ClassId> ignore_id;
  std::vector<ClassId> labels;

  static LabelMap filled(int width, int height, ClassId fill, int num_classes,
                         std::optional<ClassId> ignore = std::nullopt);

  std::size_t size() const { return labels.size(); }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x);
  }
  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  ClassId at(int x, int y) const { return labels[index(x, y)]; }
  ClassId& at(int x, int y) { return labels[index(x, y)]; }
  bool is_ignore(ClassId c) const { return ignore_id.has_value() && *ignore_id == c; }

  // Throws ValidationError when the declared shape and the stored labels disagree.
  void validate() const;

  friend bool operator==(const LabelMap&, const LabelMap&) = default;
};

}  // namespace wiou

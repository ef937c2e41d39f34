#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wiou/label_map.hpp"
#include "wiou/palette.hpp"

namespace wiou {

struct Band {
  ClassId cls = 0;
  double fraction = 0.0;

  friend bool operator==(const Band&, const Band&) = default;
};

struct Rect {
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Disk {
  double cx = 0.0, cy = 0.0;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

struct Polygon {
  std::vector<std::pair<double, double>> vertices;  // closed implicitly

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

using Shape = std::variant<Rect, Disk, Polygon>;

// One object painted over the bands; multiple shapes rasterize as their union.
struct SceneObject {
  ClassId cls = 0;
  std::vector<Shape> shapes;

  friend bool operator==(const SceneObject&, const SceneObject&) = default;
};

// Horizontal background bands painted bottom-up plus one object on top.
// bands[0] is the bottom band; fractions must be positive and sum to 1.
struct SceneSpec {
  std::string name;
  int width = 0;
  int height = 0;
  int num_classes = 0;  // 0 = derive from the largest class id used
  std::vector<Band> bands;
  SceneObject object;

  friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

LabelMap generate_scene(const SceneSpec& spec);

// Sampled ellipse outline, for slender object silhouettes.
Polygon ellipse_polygon(double cx, double cy, double rx, double ry, int segments = 64);

// The three stock street scenes and the class palette they are drawn with.
std::vector<SceneSpec> builtin_scenes();
Palette builtin_palette();

}  // namespace wiou

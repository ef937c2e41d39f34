#include "wiou/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wiou/error.hpp"

namespace wiou {

namespace {

struct Bounds {
  double min_x, min_y, max_x, max_y;
};

Bounds shape_bounds(const Shape& shape) {
  if (const Rect* r = std::get_if<Rect>(&shape)) {
    const double x0 = std::round(r->cx) - r->width / 2;
    const double y0 = std::round(r->cy) - r->height / 2;
    return {x0, y0, x0 + r->width - 1, y0 + r->height - 1};
  }
  if (const Disk* d = std::get_if<Disk>(&shape)) {
    return {d->cx - d->radius, d->cy - d->radius, d->cx + d->radius, d->cy + d->radius};
  }
  const Polygon& p = std::get<Polygon>(shape);
  Bounds b{p.vertices[0].first, p.vertices[0].second, p.vertices[0].first,
           p.vertices[0].second};
  for (const auto& [x, y] : p.vertices) {
    b.min_x = std::min(b.min_x, x);
    b.min_y = std::min(b.min_y, y);
    b.max_x = std::max(b.max_x, x);
    b.max_y = std::max(b.max_y, y);
  }
  return b;
}

bool shape_contains(const Shape& shape, int x, int y) {
  if (const Rect* r = std::get_if<Rect>(&shape)) {
    const int x0 = static_cast<int>(std::lround(r->cx)) - r->width / 2;
    const int y0 = static_cast<int>(std::lround(r->cy)) - r->height / 2;
    return x >= x0 && x < x0 + r->width && y >= y0 && y < y0 + r->height;
  }
  if (const Disk* d = std::get_if<Disk>(&shape)) {
    const double dx = x - d->cx;
    const double dy = y - d->cy;
    return dx * dx + dy * dy <= d->radius * d->radius;
  }
  const Polygon& poly = std::get<Polygon>(shape);
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double xi = v[i].first, yi = v[i].second;
    const double xj = v[j].first, yj = v[j].second;
    if ((yi > y) != (yj > y)) {
      const double xcross = xi + (y - yi) / (yj - yi) * (xj - xi);
      if (x < xcross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

}  // namespace

Polygon ellipse_polygon(double cx, double cy, double rx, double ry, int segments) {
  if (segments < 3 || rx <= 0.0 || ry <= 0.0) {
    throw ValidationError("ellipse outline needs at least 3 segments and positive radii");
  }
  Polygon p;
  p.vertices.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    const double t = 2.0 * std::numbers::pi * k / segments;
    p.vertices.emplace_back(cx + rx * std::cos(t), cy + ry * std::sin(t));
  }
  return p;
}

LabelMap generate_scene(const SceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) {
    throw ValidationError("scene dimensions must be positive, got " +
                          std::to_string(spec.width) + "x" + std::to_string(spec.height));
  }
  if (spec.bands.empty()) {
    throw ValidationError("scene needs at least one band");
  }
  double total = 0.0;
  int max_cls = 0;
  for (const Band& b : spec.bands) {
    if (!(b.fraction > 0.0)) {
      throw ValidationError("band fractions must be positive");
    }
    total += b.fraction;
    max_cls = std::max(max_cls, static_cast<int>(b.cls));
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("band fractions must sum to 1, got " + std::to_string(total));
  }
  if (!spec.object.shapes.empty()) {
    max_cls = std::max(max_cls, static_cast<int>(spec.object.cls));
  }
  const int num_classes = spec.num_classes > 0 ? spec.num_classes : max_cls + 1;
  if (max_cls >= num_classes) {
    throw ValidationError("scene uses class " + std::to_string(max_cls) +
                          " but declares only " + std::to_string(num_classes) + " classes");
  }

  LabelMap map = LabelMap::filled(spec.width, spec.height, spec.bands.back().cls, num_classes);

  // Bands fill bottom-up: band k spans the rows between the cumulative
  // fraction cuts, with the top band absorbing any rounding slack.
  double cumulative = 0.0;
  std::int64_t prev_cut = 0;
  for (std::size_t k = 0; k < spec.bands.size(); ++k) {
    cumulative += spec.bands[k].fraction;
    std::int64_t cut = k + 1 == spec.bands.size()
                           ? spec.height
                           : std::clamp<std::int64_t>(std::llround(cumulative * spec.height), 0,
                                                      spec.height);
    cut = std::max(cut, prev_cut);
    for (std::int64_t row = prev_cut; row < cut; ++row) {
      const int y = spec.height - 1 - static_cast<int>(row);
      ClassId* line = map.labels.data() + map.index(0, y);
      std::fill(line, line + spec.width, spec.bands[k].cls);
    }
    prev_cut = cut;
  }

  for (const Shape& shape : spec.object.shapes) {
    const Bounds b = shape_bounds(shape);
    if (b.min_x < 0.0 || b.min_y < 0.0 || b.max_x > spec.width - 1 ||
        b.max_y > spec.height - 1) {
      throw ValidationError("object shape leaves the image: bounds [" +
                            std::to_string(b.min_x) + ", " + std::to_string(b.min_y) + "] to [" +
                            std::to_string(b.max_x) + ", " + std::to_string(b.max_y) +
                            "] in a " + std::to_string(spec.width) + "x" +
                            std::to_string(spec.height) + " scene");
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(b.min_x)));
    const int y0 = std::max(0, static_cast<int>(std::floor(b.min_y)));
    const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(b.max_x)));
    const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(b.max_y)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (shape_contains(shape, x, y)) {
          map.at(x, y) = spec.object.cls;
        }
      }
    }
  }
  return map;
}

Palette builtin_palette() {
  return Palette::from_entries({
      {0, "road", {128, 64, 128}, false},
      {1, "sidewalk", {244, 35, 232}, false},
      {2, "sky", {70, 130, 180}, false},
      {3, "car", {0, 0, 142}, false},
      {4, "person", {220, 20, 60}, false},
      {5, "vegetation", {107, 142, 35}, false},
      {6, "void", {0, 0, 0}, true},
  });
}

std::vector<SceneSpec> builtin_scenes() {
  const int nc = builtin_palette().num_classes();
  std::vector<SceneSpec> scenes;

  SceneSpec car;
  car.name = "car";
  car.width = 256;
  car.height = 256;
  car.num_classes = nc;
  car.bands = {{0, 0.40}, {1, 0.15}, {2, 0.45}};
  car.object.cls = 3;
  car.object.shapes = {Rect{128.0, 150.0, 104, 44}, Disk{128.0, 122.0, 30.0}};
  scenes.push_back(std::move(car));

  SceneSpec person;
  person.name = "person";
  person.width = 256;
  person.height = 256;
  person.num_classes = nc;
  person.bands = {{0, 0.45}, {1, 0.20}, {2, 0.35}};
  person.object.cls = 4;
  person.object.shapes = {ellipse_polygon(128.0, 130.0, 20.0, 58.0)};
  scenes.push_back(std::move(person));

  SceneSpec tree;
  tree.name = "tree";
  tree.width = 256;
  tree.height = 256;
  tree.num_classes = nc;
  tree.bands = {{0, 0.35}, {1, 0.15}, {2, 0.50}};
  tree.object.cls = 5;
  tree.object.shapes = {Disk{128.0, 96.0, 46.0}, Rect{128.0, 180.0, 18, 76}};
  scenes.push_back(std::move(tree));

  return scenes;
}

}  // namespace wiou

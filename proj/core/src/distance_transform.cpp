#include "wiou/distance_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "png_codec.hpp"
#include "wiou/error.hpp"

namespace wiou {

namespace {

constexpr std::int64_t kUnreached = std::int64_t{1} << 50;

// Two-pass chamfer sweep; exact for city-block (4-neighbor) and chessboard
// (8-neighbor) distances with unit step costs.
void chamfer(std::vector<std::int64_t>& cost, int w, int h, bool diagonals) {
  for (int y = 0; y < h; ++y) {
    std::int64_t* row = cost.data() + static_cast<std::size_t>(y) * w;
    const std::int64_t* up = row - w;
    for (int x = 0; x < w; ++x) {
      std::int64_t c = row[x];
      if (c == 0) {
        continue;
      }
      if (x > 0) {
        c = std::min(c, row[x - 1] + 1);
      }
      if (y > 0) {
        c = std::min(c, up[x] + 1);
        if (diagonals) {
          if (x > 0) {
            c = std::min(c, up[x - 1] + 1);
          }
          if (x + 1 < w) {
            c = std::min(c, up[x + 1] + 1);
          }
        }
      }
      row[x] = c;
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    std::int64_t* row = cost.data() + static_cast<std::size_t>(y) * w;
    const std::int64_t* down = row + w;
    for (int x = w - 1; x >= 0; --x) {
      std::int64_t c = row[x];
      if (c == 0) {
        continue;
      }
      if (x + 1 < w) {
        c = std::min(c, row[x + 1] + 1);
      }
      if (y + 1 < h) {
        c = std::min(c, down[x] + 1);
        if (diagonals) {
          if (x + 1 < w) {
            c = std::min(c, down[x + 1] + 1);
          }
          if (x > 0) {
            c = std::min(c, down[x - 1] + 1);
          }
        }
      }
      row[x] = c;
    }
  }
}

// 1D squared-distance transform via the lower envelope of parabolas
// q -> (q - p)^2 + f[p]. Exact for this problem size: envelope crossings that
// matter lie in [0, n) where they are separated from sample points by at
// least 1/(2n) unless they coincide exactly.
void dt_1d(const std::int64_t* f, std::int64_t* d, int n, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s;
    while (true) {
      const int p = v[k];
      s = (static_cast<double>(f[q] - f[p]) +
           static_cast<double>(q) * q - static_cast<double>(p) * p) /
          (2.0 * (q - p));
      if (s > z[k]) {
        break;
      }
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) {
      ++k;
    }
    const std::int64_t dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

void edt_squared(std::vector<std::int64_t>& cost, int w, int h) {
  const int m = std::max(w, h);
  std::vector<std::int64_t> f(m), d(m);
  std::vector<int> v(m);
  std::vector<double> z(static_cast<std::size_t>(m) + 1);
  for (int y = 0; y < h; ++y) {
    std::int64_t* row = cost.data() + static_cast<std::size_t>(y) * w;
    dt_1d(row, d.data(), w, v.data(), z.data());
    std::copy(d.begin(), d.begin() + w, row);
  }
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) {
      f[y] = cost[static_cast<std::size_t>(y) * w + x];
    }
    dt_1d(f.data(), d.data(), h, v.data(), z.data());
    for (int y = 0; y < h; ++y) {
      cost[static_cast<std::size_t>(y) * w + x] = d[y];
    }
  }
}

}  // namespace

double RawDistanceMap::distance_at(std::size_t i) const {
  const std::int64_t c = cost[i];
  return norm == Norm::L2 ? std::sqrt(static_cast<double>(c)) : static_cast<double>(c);
}

RawDistanceMap distance_map(const LabelMap& map, ClassId cls, Norm norm) {
  if (cls >= map.num_classes) {
    throw ValidationError("class " + std::to_string(cls) + " exceeds declared class count " +
                          std::to_string(map.num_classes));
  }
  RawDistanceMap out;
  out.width = map.width;
  out.height = map.height;
  out.norm = norm;
  out.cls = cls;
  out.cost.resize(map.size());
  bool any_background = false;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map.labels[i] == cls) {
      out.cost[i] = kUnreached;
    } else {
      out.cost[i] = 0;
      any_background = true;
    }
  }
  if (!any_background) {
    out.background_empty = true;
    return out;
  }
  switch (norm) {
    case Norm::L1:
      chamfer(out.cost, map.width, map.height, false);
      break;
    case Norm::Linf:
      chamfer(out.cost, map.width, map.height, true);
      break;
    case Norm::L2:
      edt_squared(out.cost, map.width, map.height);
      break;
  }
  return out;
}

DistanceField normalize_per_instance(const RawDistanceMap& raw, const InstanceMap& instances,
                                     NormalizeMode mode) {
  if (raw.width != instances.width || raw.height != instances.height ||
      raw.cost.size() != instances.ids.size()) {
    throw ValidationError("distance map is " + std::to_string(raw.width) + "x" +
                          std::to_string(raw.height) + " but instance map is " +
                          std::to_string(instances.width) + "x" +
                          std::to_string(instances.height));
  }
  const std::size_t n = raw.cost.size();
  for (std::size_t i = 0; i < n; ++i) {
    if ((raw.cost[i] != 0) != (instances.ids[i] != 0)) {
      const int x = static_cast<int>(i) % raw.width;
      const int y = static_cast<int>(i / static_cast<std::size_t>(raw.width));
      throw ValidationError("distance map and instance map cover different pixels at (" +
                            std::to_string(x) + ", " + std::to_string(y) + ")");
    }
  }
  DistanceField out;
  out.width = raw.width;
  out.height = raw.height;
  out.values.assign(n, 0.0);
  if (raw.background_empty) {
    // No boundary exists; the farthest-interior reading makes every pixel 1.
    std::fill(out.values.begin(), out.values.end(), 1.0);
    return out;
  }
  std::vector<std::int64_t> max_cost(static_cast<std::size_t>(instances.count) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (instances.ids[i] != 0) {
      max_cost[instances.ids[i]] = std::max(max_cost[instances.ids[i]], raw.cost[i]);
    }
  }
  std::vector<double> max_dist(max_cost.size(), 0.0);
  for (std::size_t k = 1; k < max_cost.size(); ++k) {
    max_dist[k] = raw.norm == Norm::L2 ? std::sqrt(static_cast<double>(max_cost[k]))
                                       : static_cast<double>(max_cost[k]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t id = instances.ids[i];
    if (id == 0) {
      continue;
    }
    const double dist = raw.distance_at(i);
    const double dmax = max_dist[id];
    if (mode == NormalizeMode::Standard) {
      out.values[i] = dist / dmax;
    } else {
      out.values[i] = dmax > 1.0 ? (dist - 1.0) / (dmax - 1.0) : 0.0;
    }
  }
  return out;
}

DistanceField combine_fields(const std::map<ClassId, DistanceField>& fields,
                             const LabelMap& map) {
  map.validate();
  for (const auto& [cls, field] : fields) {
    if (field.width != map.width || field.height != map.height) {
      throw ValidationError("field for class " + std::to_string(cls) + " is " +
                            std::to_string(field.width) + "x" + std::to_string(field.height) +
                            " but the label map is " + std::to_string(map.width) + "x" +
                            std::to_string(map.height));
    }
  }
  DistanceField out;
  out.width = map.width;
  out.height = map.height;
  out.values.assign(map.size(), 0.0);
  if (map.ignore_id) {
    out.excluded.assign(map.size(), 0);
  }
  const DistanceField* cached = nullptr;
  ClassId cached_cls = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const ClassId c = map.labels[i];
    if (map.is_ignore(c)) {
      out.excluded[i] = 1;
      continue;
    }
    if (!cached || cached_cls != c) {
      const auto it = fields.find(c);
      if (it == fields.end()) {
        const int x = static_cast<int>(i) % map.width;
        const int y = static_cast<int>(i / static_cast<std::size_t>(map.width));
        throw ValidationError("no distance field covers class " + std::to_string(c) +
                              " at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      cached = &it->second;
      cached_cls = c;
    }
    out.values[i] = cached->values[i];
  }
  return out;
}

DistanceField combined_distance_field(const LabelMap& map, Norm norm, int connectivity,
                                      NormalizeMode mode, std::vector<std::string>* warnings) {
  map.validate();
  std::vector<char> present(map.num_classes, 0);
  for (const ClassId c : map.labels) {
    present[c] = 1;
  }
  std::map<ClassId, DistanceField> fields;
  for (int c = 0; c < map.num_classes; ++c) {
    const ClassId cls = static_cast<ClassId>(c);
    if (!present[c] || map.is_ignore(cls)) {
      continue;
    }
    const RawDistanceMap raw = distance_map(map, cls, norm);
    if (raw.background_empty && warnings) {
      warnings->push_back("class " + std::to_string(c) +
                          " covers the whole image; its distance field is constant 1");
    }
    const InstanceMap inst = connected_components(map, cls, connectivity);
    fields.emplace(cls, normalize_per_instance(raw, inst, mode));
  }
  return combine_fields(fields, map);
}

std::vector<std::uint8_t> encode_distance_png(const DistanceField& field) {
  if (field.width <= 0 || field.height <= 0 ||
      field.values.size() != static_cast<std::size_t>(field.width) * field.height) {
    throw ValidationError("distance field shape is inconsistent");
  }
  std::vector<std::uint16_t> gray(field.values.size());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    if (field.excluded_at(i)) {
      gray[i] = 0;
      continue;
    }
    const double v = std::clamp(field.values[i], 0.0, 1.0);
    gray[i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
  }
  return detail::encode_png_gray16(field.width, field.height, gray.data());
}

}  // namespace wiou

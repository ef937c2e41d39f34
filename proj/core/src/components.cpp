#include "wiou/components.hpp"

#include <string>

#include "wiou/error.hpp"

namespace wiou {

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];  // path halving
    a = parent[a];
  }
  return a;
}

void unite(std::vector<std::uint32_t>& parent, std::uint32_t a, std::uint32_t b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a == b) {
    return;
  }
  if (a > b) {
    std::swap(a, b);
  }
  parent[b] = a;  // keep the smaller provisional label as root
}

}  // namespace

InstanceMap connected_components(const LabelMap& map, ClassId cls, int connectivity) {
  if (connectivity != 4 && connectivity != 8) {
    throw ValidationError("connectivity must be 4 or 8, got " + std::to_string(connectivity));
  }
  if (cls >= map.num_classes) {
    throw ValidationError("class " + std::to_string(cls) + " exceeds declared class count " +
                          std::to_string(map.num_classes));
  }
  const int w = map.width;
  const int h = map.height;
  InstanceMap out;
  out.width = w;
  out.height = h;
  out.ids.assign(map.size(), 0);

  std::vector<std::uint32_t> provisional(map.size(), 0);
  std::vector<std::uint32_t> parent;
  parent.push_back(0);  // provisional labels are 1-based

  const bool diag = connectivity == 8;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = map.index(x, y);
      if (map.labels[i] != cls) {
        continue;
      }
      std::uint32_t label = 0;
      const auto consider = [&](int nx, int ny) {
        if (nx < 0 || nx >= w || ny < 0) {
          return;
        }
        const std::uint32_t n = provisional[map.index(nx, ny)];
        if (n == 0) {
          return;
        }
        if (label == 0) {
          label = n;
        } else {
          unite(parent, label, n);
        }
      };
      consider(x - 1, y);
      consider(x, y - 1);
      if (diag) {
        consider(x - 1, y - 1);
        consider(x + 1, y - 1);
      }
      if (label == 0) {
        label = static_cast<std::uint32_t>(parent.size());
        parent.push_back(label);
      }
      provisional[i] = label;
    }
  }

  std::vector<std::uint32_t> final_id(parent.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (provisional[i] == 0) {
      continue;
    }
    const std::uint32_t root = find_root(parent, provisional[i]);
    if (final_id[root] == 0) {
      final_id[root] = ++next;
    }
    out.ids[i] = final_id[root];
  }
  out.count = next;
  return out;
}

}  // namespace wiou

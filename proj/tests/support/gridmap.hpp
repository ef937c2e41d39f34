#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wiou/label_map.hpp"

namespace testutil {

// Builds a label map from digit rows, e.g. {"011", "001"}.
inline wiou::LabelMap from_rows(const std::vector<std::string>& rows, int num_classes,
                                std::optional<wiou::ClassId> ignore = std::nullopt) {
  wiou::LabelMap map;
  map.height = static_cast<int>(rows.size());
  map.width = static_cast<int>(rows.front().size());
  map.num_classes = num_classes;
  map.ignore_id = ignore;
  map.labels.reserve(map.size());
  for (const auto& row : rows) {
    for (char c : row) map.labels.push_back(static_cast<wiou::ClassId>(c - '0'));
  }
  map.validate();
  return map;
}

}  // namespace testutil

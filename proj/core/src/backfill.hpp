#pragma once

#include <cstdint>

#include "wiou/label_map.hpp"

namespace wiou::detail {

// The class of the nearest pixel of `map` that is not `cls`, seen from
// (x, y). `sq_dist` must be the exact squared Euclidean distance to that
// nearest pixel (from an L2 distance map of `cls`); candidates at exactly
// that distance are enumerated and ties resolve to the smallest class id.
ClassId nearest_other_label(const LabelMap& map, ClassId cls, int x, int y,
                            std::int64_t sq_dist);

}  // namespace wiou::detail

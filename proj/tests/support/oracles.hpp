#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wiou/distance_transform.hpp"
#include "wiou/label_map.hpp"

namespace oracle {

// Exhaustive nearest-other-label scan. For every pixel, the minimum distance
// to any pixel holding a different label, as [L1, squared L2, Linf]. The
// reference the fast transforms must reproduce exactly.
std::vector<std::array<std::int64_t, 3>> brute_force_distances(const wiou::LabelMap& map);

std::int64_t brute_force_cost(const std::array<std::int64_t, 3>& d, wiou::Norm norm);

struct FloodResult {
  std::uint32_t count = 0;
  std::vector<std::uint32_t> ids;
};

// Breadth-first flood fill, ids assigned by first pixel in row-major order.
FloodResult flood_components(const wiou::LabelMap& map, wiou::ClassId cls, int connectivity);

// Kuhn augmenting-path maximum matching over the pairs within theta.
std::int64_t max_matching(const std::vector<wiou::Point>& gt_points,
                          const std::vector<wiou::Point>& pred_points, double theta);

// Textbook two-pass covariance formula; nullopt when either variance is zero.
std::optional<double> pearson_two_pass(const std::vector<double>& x,
                                       const std::vector<double>& y);

wiou::LabelMap random_map(std::mt19937_64& rng, int width, int height, int num_classes);

}  // namespace oracle

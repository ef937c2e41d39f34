#pragma once

#include <optional>

#include "wiou/boundary.hpp"
#include "wiou/label_map.hpp"
#include "wiou/metrics.hpp"

namespace wiou::detail {

// Boundary-set cores of the public edge metrics, reused by evaluate_pair so
// boundary extraction happens once per class.
EdgePrf edge_prf_sets(const BoundarySet& gt_edges, const BoundarySet& pred_edges, double theta);
std::optional<double> bf_sets(const BoundarySet& gt_edges, const BoundarySet& pred_edges,
                              double theta);

// Drops boundary points sitting on ignore pixels of the ground truth.
BoundarySet filter_ignored(BoundarySet set, const LabelMap& gt);

}  // namespace wiou::detail

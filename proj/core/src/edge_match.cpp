#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "edge_internal.hpp"
#include "wiou/error.hpp"
#include "wiou/metrics.hpp"

namespace wiou {

namespace {

// Uniform-grid index over a point set; cells are at least theta wide, so all
// points within theta of a query lie in the 3x3 cell block around it.
class PointGrid {
 public:
  PointGrid(const std::vector<Point>& points, double theta) : points_(points) {
    cell_ = std::max(theta, 1.0);
    if (points.empty()) {
      return;
    }
    min_x_ = max_x_ = points[0].x;
    min_y_ = max_y_ = points[0].y;
    for (const Point& p : points) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    nx_ = cell_index(max_x_, min_x_) + 1;
    ny_ = cell_index(max_y_, min_y_) + 1;
    starts_.assign(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
    for (const Point& p : points) {
      ++starts_[flat_cell(p) + 1];
    }
    for (std::size_t c = 1; c < starts_.size(); ++c) {
      starts_[c] += starts_[c - 1];
    }
    order_.resize(points.size());
    std::vector<std::size_t> cursor(starts_.begin(), starts_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) {
      order_[cursor[flat_cell(points[i])]++] = static_cast<int>(i);
    }
  }

  template <typename Fn>
  void for_each_near(Point q, Fn&& fn) const {
    if (points_.empty()) {
      return;
    }
    const int cx = cell_index(q.x, min_x_);
    const int cy = cell_index(q.y, min_y_);
    for (int gy = std::max(0, cy - 1); gy <= std::min(ny_ - 1, cy + 1); ++gy) {
      for (int gx = std::max(0, cx - 1); gx <= std::min(nx_ - 1, cx + 1); ++gx) {
        const std::size_t c = static_cast<std::size_t>(gy) * nx_ + gx;
        for (std::size_t k = starts_[c]; k < starts_[c + 1]; ++k) {
          fn(order_[k]);
        }
      }
    }
  }

 private:
  int cell_index(int v, int origin) const {
    return static_cast<int>(std::floor((v - origin) / cell_));
  }
  std::size_t flat_cell(Point p) const {
    return static_cast<std::size_t>(cell_index(p.y, min_y_)) * nx_ + cell_index(p.x, min_x_);
  }

  const std::vector<Point>& points_;
  double cell_ = 1.0;
  int min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
  int nx_ = 0, ny_ = 0;
  std::vector<std::size_t> starts_;
  std::vector<int> order_;
};

std::int64_t sq_dist(Point a, Point b) {
  const std::int64_t dx = a.x - b.x;
  const std::int64_t dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Hopcroft-Karp maximum bipartite matching, seeded with a greedy matching.
class BipartiteMatcher {
 public:
  BipartiteMatcher(int left, int right, std::vector<std::vector<int>> adj)
      : nl_(left), nr_(right), adj_(std::move(adj)), match_l_(left, -1), match_r_(right, -1),
        dist_(left, 0) {}

  std::int64_t run() {
    std::int64_t matched = 0;
    for (int u = 0; u < nl_; ++u) {
      for (int r : adj_[u]) {
        if (match_r_[r] < 0) {
          match_l_[u] = r;
          match_r_[r] = u;
          ++matched;
          break;
        }
      }
    }
    while (bfs()) {
      for (int u = 0; u < nl_; ++u) {
        if (match_l_[u] < 0 && dfs(u)) {
          ++matched;
        }
      }
    }
    return matched;
  }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();

  bool bfs() {
    std::queue<int> q;
    for (int u = 0; u < nl_; ++u) {
      if (match_l_[u] < 0) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool reachable_free = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int r : adj_[u]) {
        const int w = match_r_[r];
        if (w < 0) {
          reachable_free = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(int u) {
    for (int r : adj_[u]) {
      const int w = match_r_[r];
      if (w < 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = r;
        match_r_[r] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  int nl_, nr_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_l_, match_r_;
  std::vector<int> dist_;
};

void check_theta(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw ValidationError("theta must be a non-negative finite number");
  }
}

}  // namespace

EdgeMatchCounts edge_match(const BoundarySet& gt_edges, const BoundarySet& pred_edges,
                           double theta) {
  check_theta(theta);
  if (gt_edges.empty() || pred_edges.empty()) {
    return {};
  }
  const double theta_sq = theta * theta;
  const PointGrid grid(gt_edges.points, theta);
  std::vector<std::vector<int>> adj(pred_edges.size());
  for (std::size_t u = 0; u < pred_edges.size(); ++u) {
    grid.for_each_near(pred_edges.points[u], [&](int g) {
      if (static_cast<double>(sq_dist(pred_edges.points[u], gt_edges.points[g])) <= theta_sq) {
        adj[u].push_back(g);
      }
    });
  }
  BipartiteMatcher matcher(static_cast<int>(pred_edges.size()),
                           static_cast<int>(gt_edges.size()), std::move(adj));
  return {matcher.run()};
}

namespace detail {

BoundarySet filter_ignored(BoundarySet set, const LabelMap& gt) {
  if (!gt.ignore_id) {
    return set;
  }
  std::erase_if(set.points, [&](Point p) { return gt.is_ignore(gt.at(p.x, p.y)); });
  return set;
}

EdgePrf edge_prf_sets(const BoundarySet& gt_edges, const BoundarySet& pred_edges, double theta) {
  check_theta(theta);
  const auto p_count = static_cast<double>(pred_edges.size());
  const auto g_count = static_cast<double>(gt_edges.size());
  EdgePrf out;
  if (pred_edges.empty() && gt_edges.empty()) {
    return out;
  }
  const double matched = static_cast<double>(edge_match(gt_edges, pred_edges, theta).matched);
  if (!pred_edges.empty()) {
    out.precision = matched / p_count;
  }
  if (!gt_edges.empty()) {
    out.recall = matched / g_count;
  }
  out.f1 = 2.0 * matched / (p_count + g_count);
  return out;
}

std::optional<double> bf_sets(const BoundarySet& gt_edges, const BoundarySet& pred_edges,
                              double theta) {
  check_theta(theta);
  if (pred_edges.empty() && gt_edges.empty()) {
    return std::nullopt;
  }
  if (pred_edges.empty() || gt_edges.empty()) {
    return 0.0;
  }
  const double theta_sq = theta * theta;
  const auto covered_fraction = [&](const std::vector<Point>& from,
                                    const std::vector<Point>& to) {
    const PointGrid grid(to, theta);
    std::int64_t hit = 0;
    for (const Point& p : from) {
      bool close = false;
      grid.for_each_near(p, [&](int j) {
        if (!close && static_cast<double>(sq_dist(p, to[j])) <= theta_sq) {
          close = true;
        }
      });
      hit += close ? 1 : 0;
    }
    return static_cast<double>(hit) / static_cast<double>(from.size());
  };
  const double p = covered_fraction(pred_edges.points, gt_edges.points);
  const double r = covered_fraction(gt_edges.points, pred_edges.points);
  if (p + r == 0.0) {
    return 0.0;
  }
  return 2.0 * p * r / (p + r);
}

}  // namespace detail

EdgePrf edge_prf(const LabelMap& gt, const LabelMap& pred, ClassId cls, double theta) {
  if (gt.width != pred.width || gt.height != pred.height) {
    throw ValidationError("gt is " + std::to_string(gt.width) + "x" + std::to_string(gt.height) +
                          " but pred is " + std::to_string(pred.width) + "x" +
                          std::to_string(pred.height));
  }
  const BoundarySet gt_edges =
      cls < gt.num_classes ? detail::filter_ignored(extract_boundary(gt, cls), gt)
                           : BoundarySet{};
  const BoundarySet pred_edges =
      cls < pred.num_classes ? detail::filter_ignored(extract_boundary(pred, cls), gt)
                             : BoundarySet{};
  return detail::edge_prf_sets(gt_edges, pred_edges, theta);
}

std::optional<double> bf_score(const LabelMap& gt, const LabelMap& pred, ClassId cls,
                               double theta) {
  if (gt.width != pred.width || gt.height != pred.height) {
    throw ValidationError("gt is " + std::to_string(gt.width) + "x" + std::to_string(gt.height) +
                          " but pred is " + std::to_string(pred.width) + "x" +
                          std::to_string(pred.height));
  }
  const BoundarySet gt_edges =
      cls < gt.num_classes ? detail::filter_ignored(extract_boundary(gt, cls), gt)
                           : BoundarySet{};
  const BoundarySet pred_edges =
      cls < pred.num_classes ? detail::filter_ignored(extract_boundary(pred, cls), gt)
                             : BoundarySet{};
  return detail::bf_sets(gt_edges, pred_edges, theta);
}

}  // namespace wiou

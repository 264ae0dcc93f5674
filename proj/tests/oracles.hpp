// Independent reference implementations used only by the tests. These stay
// deliberately naive (brute force, sweeps, closed forms) so they cannot
// share a failure mode with the library code they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "roadaudit/core.hpp"
#include "roadaudit/geometry.hpp"

namespace oracle {

using roadaudit::Point;

inline long long cross3(const Point& o, const Point& a, const Point& b) {
  return static_cast<long long>(a.x() - o.x()) * (b.y() - o.y()) -
         static_cast<long long>(a.y() - o.y()) * (b.x() - o.x());
}

// p strictly between a and b on their segment.
inline bool on_segment_strict(const Point& p, const Point& a, const Point& b) {
  if (cross3(a, b, p) != 0) return false;
  if (p == a || p == b) return false;
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

// p inside or on triangle abc (non-degenerate abc).
inline bool in_triangle_closed(const Point& p, const Point& a, const Point& b,
                               const Point& c) {
  const long long d1 = cross3(a, b, p);
  const long long d2 = cross3(b, c, p);
  const long long d3 = cross3(c, a, p);
  const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
  const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
  return !(has_neg && has_pos);
}

// O(n^3)-style hull vertex set: a point is a hull vertex iff it lies in the
// convex hull of the remaining points neither inside/on a triangle nor
// strictly within a segment. Input points must be distinct.
inline std::set<std::pair<int, int>> brute_hull_vertices(
    const std::vector<Point>& pts) {
  std::set<std::pair<int, int>> vertices;
  const std::size_t n = pts.size();
  for (std::size_t p = 0; p < n; ++p) {
    bool contained = false;
    for (std::size_t i = 0; i < n && !contained; ++i) {
      if (i == p) continue;
      for (std::size_t j = i + 1; j < n && !contained; ++j) {
        if (j == p) continue;
        if (on_segment_strict(pts[p], pts[i], pts[j])) contained = true;
        for (std::size_t k = j + 1; k < n && !contained; ++k) {
          if (k == p) continue;
          if (cross3(pts[i], pts[j], pts[k]) == 0) continue;
          if (in_triangle_closed(pts[p], pts[i], pts[j], pts[k]))
            contained = true;
        }
      }
    }
    if (!contained) vertices.insert({pts[p].x(), pts[p].y()});
  }
  return vertices;
}

// Exact point-in-convex-polygon (closed) for integer vertices in either
// consistent winding.
inline bool inside_convex_closed(const Point& p, const std::vector<Point>& poly) {
  bool has_neg = false, has_pos = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const long long c = cross3(poly[i], poly[(i + 1) % n], p);
    has_neg = has_neg || c < 0;
    has_pos = has_pos || c > 0;
  }
  return !(has_neg && has_pos);
}

// Shoelace area of an arbitrary (possibly real-valued) ring.
inline double shoelace(const std::vector<std::pair<double, double>>& ring) {
  double acc = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [x0, y0] = ring[i];
    const auto& [x1, y1] = ring[(i + 1) % n];
    acc += x0 * y1 - x1 * y0;
  }
  return std::abs(acc) / 2.0;
}

// Smallest axis-aligned bounding-box area over a 0.5-degree orientation
// sweep; an upper bound oracle for the minimum-area rotated rectangle.
inline double min_rect_area_sweep(const std::vector<Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (double deg = 0.0; deg < 90.0; deg += 0.5) {
    const double rad = deg * std::numbers::pi / 180.0;
    const double c = std::cos(rad), s = std::sin(rad);
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const Point& p : pts) {
      const double rx = c * p.x() - s * p.y();
      const double ry = s * p.x() + c * p.y();
      lo_x = std::min(lo_x, rx);
      hi_x = std::max(hi_x, rx);
      lo_y = std::min(lo_y, ry);
      hi_y = std::max(hi_y, ry);
    }
    best = std::min(best, (hi_x - lo_x) * (hi_y - lo_y));
  }
  return best;
}

// Rasterizes a w x h rectangle rotated by `deg` about `center` into a mask:
// pixel centers inside the rotated rectangle become `value`.
inline void rasterize_rotated_rect(roadaudit::ImageT<std::uint8_t>& mask,
                                   double cx, double cy, double w, double h,
                                   double deg, std::uint8_t value) {
  const double rad = deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad), s = std::sin(rad);
  for (Eigen::Index y = 0; y < mask.rows(); ++y) {
    for (Eigen::Index x = 0; x < mask.cols(); ++x) {
      const double dx = x - cx, dy = y - cy;
      const double ux = c * dx + s * dy;   // rotate by -deg
      const double uy = -s * dx + c * dy;
      if (std::abs(ux) <= w / 2.0 && std::abs(uy) <= h / 2.0)
        mask(y, x) = value;
    }
  }
}

}  // namespace oracle

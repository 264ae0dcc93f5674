#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "roadaudit/core.hpp"

namespace roadaudit {

// Pixel coordinates: x = column, y = row (y grows downward).
using Point = Eigen::Vector2i;

// Closed 8-connected chain of border pixels. `hole` distinguishes inner
// (hole) borders from outer component borders.
struct Contour {
  std::vector<Point> points;
  bool hole = false;
};

using Polygon = std::vector<Point>;

// Oriented rectangle; width >= height, angle of the width axis from the
// image x-axis in degrees, folded into [-90, 90).
struct RotatedRect {
  Eigen::Vector2d center{0.0, 0.0};
  double width = 0.0;
  double height = 0.0;
  double angle_deg = 0.0;

  double area() const { return width * height; }
};

// Suzuki-Abe border following over 8-connected foreground components.
// Returns one outer contour per component, plus hole borders flagged
// hole = true. An empty mask yields an empty list.
std::vector<Contour> trace_contours(const BinaryMask& mask);

// Convex hull of a point set (monotone chain; output equivalent to the
// Sklansky scan on valid inputs). Vertices are ordered counter-clockwise
// under the (x, -y) convention, i.e. their standard shoelace sum over
// image coordinates is negative. Collinear edge points are excluded.
// Throws Errc::empty_input when no points are given. Degenerate sets give
// 1 (single point) or 2 (collinear) vertices.
Polygon convex_hull(std::span<const Point> points);

// 2x the signed shoelace sum over image coordinates (exact, int64).
long long signed_area2(std::span<const Point> poly);

// Absolute shoelace area. Throws Errc::degenerate for < 3 vertices.
double polygon_area(std::span<const Point> poly);

// Absolute shoelace area of the border chain; chains with < 3 points
// (or fully collinear chains) give 0.
double contour_area(const Contour& c);

// Minimum-area enclosing rectangle via calipers over the convex hull: the
// optimum has one side collinear with a hull edge. Collinear/singleton
// input degenerates to height 1e-6 preserving the segment direction.
// Equal-area ties resolve to the smallest folded angle.
RotatedRect min_area_rect(std::span<const Point> points);

// ContourArea / ConvexHullArea, clamped to [0, 1].
// Throws Errc::degenerate_hull when the hull has zero area.
double solidity(const Contour& c);

}  // namespace roadaudit

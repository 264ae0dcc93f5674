#include "roadaudit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace roadaudit {

namespace {

// 8-neighbourhood in clockwise screen order (y down).
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
// Index: 0=E 1=SE 2=S 3=SW 4=W 5=NW 6=N 7=NE

inline int direction_between(int from_y, int from_x, int to_y, int to_x) {
  const int dy = to_y - from_y, dx = to_x - from_x;
  for (int d = 0; d < 8; ++d)
    if (kDy[d] == dy && kDx[d] == dx) return d;
  return -1;
}

// Border following per Suzuki-Abe. `f` is the working label image; border
// pixels get marked +-nbd so later raster-scan starts skip them.
std::vector<Point> follow_border(ImageT<std::int32_t>& f, int y0, int x0,
                                 int start_dir, std::int32_t nbd) {
  const int h = static_cast<int>(f.rows()), w = static_cast<int>(f.cols());
  auto at = [&](int y, int x) -> std::int32_t {
    if (y < 0 || y >= h || x < 0 || x >= w) return 0;
    return f(y, x);
  };

  std::vector<Point> chain;

  // Step 3.1: clockwise scan from the start direction for a nonzero pixel.
  int dir1 = -1;
  for (int s = 0; s < 8; ++s) {
    const int d = (start_dir + s) % 8;
    if (at(y0 + kDy[d], x0 + kDx[d]) != 0) {
      dir1 = d;
      break;
    }
  }
  if (dir1 < 0) {
    f(y0, x0) = -nbd;  // isolated pixel
    chain.push_back(Point(x0, y0));
    return chain;
  }
  const int y1 = y0 + kDy[dir1], x1 = x0 + kDx[dir1];

  int py = y1, px = x1;  // (i2, j2)
  int cy = y0, cx = x0;  // (i3, j3)
  while (true) {
    // Step 3.3: counter-clockwise scan around (cy, cx) starting just after
    // the direction of the previous pixel.
    const int back = direction_between(cy, cx, py, px);
    int ny = 0, nx = 0;
    bool east_seen_zero = false;
    for (int s = 1; s <= 8; ++s) {
      const int d = (back - s + 16) % 8;
      const int ty = cy + kDy[d], tx = cx + kDx[d];
      const std::int32_t v = at(ty, tx);
      if (v != 0) {
        ny = ty;
        nx = tx;
        break;
      }
      if (d == 0) east_seen_zero = true;  // east neighbour examined and zero
    }
    // Step 3.4: mark the current pixel.
    if (east_seen_zero)
      f(cy, cx) = -nbd;
    else if (f(cy, cx) == 1)
      f(cy, cx) = nbd;
    chain.push_back(Point(cx, cy));
    // Step 3.5: stop when about to repeat the initial move.
    if (ny == y0 && nx == x0 && cy == y1 && cx == x1) break;
    py = cy;
    px = cx;
    cy = ny;
    cx = nx;
  }
  return chain;
}

inline long long cross(const Point& o, const Point& a, const Point& b) {
  return static_cast<long long>(a.x() - o.x()) * (b.y() - o.y()) -
         static_cast<long long>(a.y() - o.y()) * (b.x() - o.x());
}

double fold_angle_deg(double deg) {
  deg = std::fmod(deg, 180.0);
  if (deg < -90.0) deg += 180.0;
  if (deg >= 90.0) deg -= 180.0;
  return deg;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
  const int h = static_cast<int>(mask.rows()), w = static_cast<int>(mask.cols());
  ImageT<std::int32_t> f(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) f(y, x) = mask(y, x) ? 1 : 0;

  std::vector<Contour> contours;
  std::int32_t nbd = 1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t v = f(y, x);
      if (v == 0) continue;
      bool outer = false, hole = false;
      if (v == 1 && (x == 0 || f(y, x - 1) == 0)) {
        outer = true;
      } else if (v >= 1 && (x == w - 1 || f(y, x + 1) == 0)) {
        hole = true;
      } else {
        continue;
      }
      ++nbd;
      const int start_dir = outer ? 4 : 0;  // W for outer, E for hole
      Contour c;
      c.points = follow_border(f, y, x, start_dir, nbd);
      c.hole = hole;
      contours.push_back(std::move(c));
    }
  }
  return contours;
}

long long signed_area2(std::span<const Point> poly) {
  long long acc = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % n];
    acc += static_cast<long long>(a.x()) * b.y() -
           static_cast<long long>(b.x()) * a.y();
  }
  return acc;
}

double polygon_area(std::span<const Point> poly) {
  if (poly.size() < 3) fail(Errc::degenerate, "polygon needs >= 3 vertices");
  return std::abs(static_cast<double>(signed_area2(poly))) / 2.0;
}

double contour_area(const Contour& c) {
  if (c.points.size() < 3) return 0.0;
  return std::abs(static_cast<double>(signed_area2(c.points))) / 2.0;
}

Polygon convex_hull(std::span<const Point> points) {
  if (points.empty()) fail(Errc::empty_input, "convex_hull of empty set");

  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) { return a == b; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return Polygon(pts.begin(), pts.end());

  // Monotone chain; strict turns only, so collinear edge points drop out.
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);

  // The chain above comes out with positive shoelace; reverse for the
  // y-down counter-clockwise convention, keeping the lexicographic minimum
  // first.
  std::reverse(hull.begin() + 1, hull.end());
  return hull;
}

RotatedRect min_area_rect(std::span<const Point> points) {
  const Polygon hull = convex_hull(points);  // throws on empty

  RotatedRect best;
  if (hull.size() == 1) {
    best.center = hull[0].cast<double>();
    best.width = best.height = 1e-6;
    best.angle_deg = 0.0;
    return best;
  }
  if (hull.size() == 2) {
    const Eigen::Vector2d a = hull[0].cast<double>();
    const Eigen::Vector2d b = hull[1].cast<double>();
    best.center = 0.5 * (a + b);
    best.width = (b - a).norm();
    best.height = 1e-6;
    best.angle_deg = fold_angle_deg(
        std::atan2(b.y() - a.y(), b.x() - a.x()) * 180.0 / std::numbers::pi);
    return best;
  }

  double best_area = std::numeric_limits<double>::infinity();
  bool have_best = false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d a = hull[i].cast<double>();
    const Eigen::Vector2d b = hull[(i + 1) % hull.size()].cast<double>();
    const Eigen::Vector2d u = (b - a).normalized();
    const Eigen::Vector2d nrm(-u.y(), u.x());

    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_n = lo_u, hi_n = -lo_u;
    for (const Point& p : hull) {
      const Eigen::Vector2d v = p.cast<double>();
      const double su = v.dot(u), sn = v.dot(nrm);
      lo_u = std::min(lo_u, su);
      hi_u = std::max(hi_u, su);
      lo_n = std::min(lo_n, sn);
      hi_n = std::max(hi_n, sn);
    }
    const double eu = hi_u - lo_u, en = hi_n - lo_n;
    const double area = eu * en;

    RotatedRect cand;
    cand.center = u * (0.5 * (lo_u + hi_u)) + nrm * (0.5 * (lo_n + hi_n));
    const Eigen::Vector2d wdir = eu >= en ? u : nrm;
    cand.width = std::max(eu, en);
    cand.height = std::min(eu, en);
    cand.angle_deg = fold_angle_deg(std::atan2(wdir.y(), wdir.x()) * 180.0 /
                                    std::numbers::pi);

    if (!have_best) {
      best = cand;
      best_area = area;
      have_best = true;
      continue;
    }
    const double tol = 1e-9 * std::max(1.0, std::min(area, best_area));
    if (area < best_area - tol ||
        (std::abs(area - best_area) <= tol && cand.angle_deg < best.angle_deg)) {
      best = cand;
      best_area = std::min(area, best_area);
    }
  }
  if (best.height <= 0.0) best.height = 1e-6;
  return best;
}

double solidity(const Contour& c) {
  const Polygon hull = convex_hull(c.points);
  if (hull.size() < 3) fail(Errc::degenerate_hull, "hull has no area");
  const double denom = polygon_area(hull);
  if (denom <= 0.0) fail(Errc::degenerate_hull, "hull has no area");
  return std::clamp(contour_area(c) / denom, 0.0, 1.0);
}

}  // namespace roadaudit

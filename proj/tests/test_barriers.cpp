#include <doctest.h>

#include "oracles.hpp"
#include "roadaudit/barriers.hpp"

using namespace roadaudit;

namespace {

// Comb-shaped guardrail: a horizontal rail band with posts below and open
// gaps between them ("no shield beneath the guard rail"). Post spans are
// inclusive column ranges relative to the comb origin.
//
// Hand oracle for the boundary-chain solidity: the outline through pixel
// centres encloses rail 60x8 plus (post_width-1)x12 per post, and the hull
// of the chain is the full 60x20 rectangle, so
//   comb A (4 posts, 5 px wide):  (480 + 4*48) / 1200 = 0.560
//   comb B (6 posts, 6 px wide):  (480 + 6*60) / 1200 = 0.700
// The traced chain cuts half a pixel at each inner corner, which the 0.02
// tolerance absorbs.
void stamp_comb(ClassMask& mask, int x0, int y0,
                const std::vector<std::pair<int, int>>& posts,
                std::uint8_t class_id) {
  for (int y = 0; y <= 8; ++y)
    for (int x = 0; x <= 60; ++x) mask(y0 + y, x0 + x) = class_id;
  for (const auto& [a, b] : posts)
    for (int y = 9; y <= 20; ++y)
      for (int x = a; x <= b; ++x) mask(y0 + y, x0 + x) = class_id;
}

const std::vector<std::pair<int, int>> kCombA = {
    {0, 4}, {18, 22}, {38, 42}, {56, 60}};
const std::vector<std::pair<int, int>> kCombB = {
    {0, 5}, {11, 16}, {22, 27}, {33, 38}, {44, 49}, {55, 60}};

ClassMask flipped(const ClassMask& mask) {
  ClassMask out(mask.rows(), mask.cols());
  for (Eigen::Index y = 0; y < mask.rows(); ++y)
    for (Eigen::Index x = 0; x < mask.cols(); ++x)
      out(y, x) = mask(y, mask.cols() - 1 - x);
  return out;
}

BarrierParams default_params() {
  BarrierParams p;
  p.barrier_classes = {4};
  return p;
}

}  // namespace

TEST_CASE("a convex barrier on the right is safe") {
  ClassMask mask(90, 200);
  mask.setZero();
  // Trapezoid in the right half, rasterised by point-in-polygon.
  const std::vector<std::pair<double, double>> quad = {
      {120, 30}, {180, 25}, {190, 70}, {110, 75}};
  for (int y = 0; y < 90; ++y) {
    for (int x = 0; x < 200; ++x) {
      bool inside = true;
      for (std::size_t i = 0; i < quad.size() && inside; ++i) {
        const auto& [ax, ay] = quad[i];
        const auto& [bx, by] = quad[(i + 1) % quad.size()];
        if ((bx - ax) * (y - ay) - (by - ay) * (x - ax) < 0) inside = false;
      }
      if (inside) mask(y, x) = 4;
    }
  }
  const auto out = assess_barriers(mask, 200, default_params());
  REQUIRE(out.size() == 1);
  CHECK(out[0].side == Side::right);
  CHECK(out[0].solidity >= 0.95);
  CHECK(out[0].safe);
}

TEST_CASE("comb A on the right is unsafe") {
  ClassMask mask(100, 200);
  mask.setZero();
  stamp_comb(mask, 120, 40, kCombA, 4);
  const auto out = assess_barriers(mask, 200, default_params());
  REQUIRE(out.size() == 1);
  CHECK(out[0].side == Side::right);
  CHECK(out[0].solidity == doctest::Approx(0.56).epsilon(0.04));
  CHECK(std::abs(out[0].solidity - 0.56) <= 0.02);
  CHECK_FALSE(out[0].safe);
}

TEST_CASE("comb B is safe on the left, unsafe on the right") {
  ClassMask left(100, 200);
  left.setZero();
  stamp_comb(left, 20, 40, kCombB, 4);
  const auto lout = assess_barriers(left, 200, default_params());
  REQUIRE(lout.size() == 1);
  CHECK(lout[0].side == Side::left);
  CHECK(std::abs(lout[0].solidity - 0.70) <= 0.02);
  CHECK(lout[0].safe);  // 0.70 > 0.6

  ClassMask right(100, 200);
  right.setZero();
  stamp_comb(right, 120, 40, kCombB, 4);
  const auto rout = assess_barriers(right, 200, default_params());
  REQUIRE(rout.size() == 1);
  CHECK(rout[0].side == Side::right);
  CHECK(std::abs(rout[0].solidity - 0.70) <= 0.02);
  CHECK_FALSE(rout[0].safe);  // 0.70 < 0.8
}

TEST_CASE("mirroring swaps sides and preserves solidity") {
  ClassMask mask(100, 200);
  mask.setZero();
  stamp_comb(mask, 120, 40, kCombA, 4);
  const auto orig = assess_barriers(mask, 200, default_params());
  const auto mirr = assess_barriers(flipped(mask), 200, default_params());
  REQUIRE(orig.size() == 1);
  REQUIRE(mirr.size() == 1);
  CHECK(orig[0].side == Side::right);
  CHECK(mirr[0].side == Side::left);
  CHECK(std::abs(orig[0].solidity - mirr[0].solidity) <= 1e-6);
}

TEST_CASE("speckle below min_area is ignored") {
  ClassMask mask(100, 200);
  mask.setZero();
  stamp_comb(mask, 120, 40, kCombA, 4);
  const auto base = assess_barriers(mask, 200, default_params());
  mask.block(5, 5, 3, 3).setConstant(4);  // 9 px blob, far below 400
  const auto with_blob = assess_barriers(mask, 200, default_params());
  REQUIRE(base.size() == with_blob.size());
  CHECK(base[0].solidity == doctest::Approx(with_blob[0].solidity));
}

TEST_CASE("no barrier pixels produce no assessments") {
  ClassMask mask(50, 50);
  mask.setZero();
  CHECK(assess_barriers(mask, 50, default_params()).empty());
}

TEST_CASE("degenerate contours are tallied, not assessed") {
  ClassMask mask(100, 200);
  mask.setZero();
  // A single row is area 0 < min_area; use min_area 0 to reach the hull.
  for (int x = 20; x < 60; ++x) mask(50, x) = 4;
  BarrierParams p = default_params();
  p.min_area = 0.0;
  BarrierDiagnostics diag;
  const auto out = assess_barriers(mask, 200, p, &diag);
  CHECK(out.empty());
  CHECK(diag.dropped_degenerate == 1);
}

TEST_CASE("safe flag equals the threshold comparison exactly") {
  ClassMask mask(100, 400);
  mask.setZero();
  stamp_comb(mask, 40, 30, kCombA, 4);
  stamp_comb(mask, 250, 30, kCombB, 4);
  const BarrierParams p = default_params();
  const auto out = assess_barriers(mask, 400, p);
  REQUIRE(out.size() == 2);
  for (const auto& a : out) {
    const double thr = a.side == Side::right ? p.right_threshold : p.left_threshold;
    CHECK(a.safe == (a.solidity > thr));
  }
}

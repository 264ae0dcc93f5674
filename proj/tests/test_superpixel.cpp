#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "roadaudit/superpixel.hpp"

using namespace roadaudit;

namespace {

// Checks every label forms one 4-connected region and that regions tile
// the image; returns per-label sizes.
std::vector<long long> check_partition(const SuperpixelLabeling& lab) {
  const int h = static_cast<int>(lab.rows()), w = static_cast<int>(lab.cols());
  std::vector<long long> sizes(static_cast<std::size_t>(lab.count), 0);
  ImageT<std::uint8_t> seen(h, w);
  seen.setZero();
  std::set<int> started;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int id = lab.labels(y, x);
      REQUIRE(id >= 0);
      REQUIRE(id < lab.count);
      ++sizes[static_cast<std::size_t>(id)];
      if (seen(y, x)) continue;
      // A label seen from a second seed would mean a disconnected region.
      REQUIRE(started.insert(id).second);
      stack.push_back({y, x});
      seen(y, x) = 1;
      while (!stack.empty()) {
        const auto [cy, cx] = stack.back();
        stack.pop_back();
        const int ny[4] = {cy - 1, cy + 1, cy, cy};
        const int nx[4] = {cx, cx, cx - 1, cx + 1};
        for (int i = 0; i < 4; ++i) {
          if (ny[i] < 0 || ny[i] >= h || nx[i] < 0 || nx[i] >= w) continue;
          if (seen(ny[i], nx[i]) || lab.labels(ny[i], nx[i]) != id) continue;
          seen(ny[i], nx[i]) = 1;
          stack.push_back({ny[i], nx[i]});
        }
      }
    }
  }
  long long total = 0;
  for (long long s : sizes) {
    CHECK(s > 0);  // ids are dense
    total += s;
  }
  CHECK(total == static_cast<long long>(w) * h);
  return sizes;
}

}  // namespace

TEST_CASE("slic tiles a uniform image into a block grid") {
  GrayImage img(20, 20);
  img.setConstant(100);
  SlicParams p;
  p.k = 4;
  const SuperpixelLabeling lab = slic(img, p);
  CHECK(lab.count >= 2);
  CHECK(lab.count <= 6);
  check_partition(lab);
  // Corners land in four different regions for a 2x2 grid.
  std::set<int> corners = {lab.labels(2, 2), lab.labels(2, 17),
                           lab.labels(17, 2), lab.labels(17, 17)};
  CHECK(corners.size() == static_cast<std::size_t>(lab.count));
}

TEST_CASE("slic with k=1 labels everything alike") {
  GrayImage img(13, 29);
  img.setConstant(77);
  SlicParams p;
  p.k = 1;
  const SuperpixelLabeling lab = slic(img, p);
  CHECK(lab.count == 1);
  CHECK((lab.labels == 0).all());
}

TEST_CASE("slic respects a hard intensity edge") {
  GrayImage img(40, 40);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x) img(y, x) = x < 20 ? 0 : 255;
  SlicParams p;
  p.k = 8;
  const SuperpixelLabeling lab = slic(img, p);
  check_partition(lab);

  // Boundary recall: label transitions at the true edge, row by row.
  int transitions = 0;
  for (int y = 0; y < 40; ++y)
    if (lab.labels(y, 19) != lab.labels(y, 20)) ++transitions;
  CHECK(transitions >= 36);  // recall >= 0.9

  // No superpixel mixes the two sides by more than min_region pixels.
  const double step = std::sqrt(40.0 * 40.0 / 8.0);
  const int min_region = static_cast<int>((step / 2) * (step / 2));
  std::vector<long long> dark(static_cast<std::size_t>(lab.count), 0);
  std::vector<long long> bright(static_cast<std::size_t>(lab.count), 0);
  for (int y = 0; y < 40; ++y)
    for (int x = 0; x < 40; ++x)
      (img(y, x) == 0 ? dark : bright)[static_cast<std::size_t>(
          lab.labels(y, x))]++;
  for (int id = 0; id < lab.count; ++id)
    CHECK(std::min(dark[id], bright[id]) <= min_region);
}

TEST_CASE("slic count stays near k on uniform inputs") {
  GrayImage img(48, 64);
  img.setConstant(50);
  for (int k : {4, 9, 12, 25}) {
    SlicParams p;
    p.k = k;
    const SuperpixelLabeling lab = slic(img, p);
    CHECK(lab.count >= k / 2);
    CHECK(lab.count <= k + k / 2);
    check_partition(lab);
  }
}

TEST_CASE("slic is deterministic") {
  std::mt19937 rng(5);
  GrayImage img(32, 24);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 24; ++x) img(y, x) = static_cast<std::uint8_t>(rng());
  SlicParams p;
  p.k = 6;
  const SuperpixelLabeling a = slic(img, p);
  const SuperpixelLabeling b = slic(img, p);
  CHECK(a.count == b.count);
  CHECK((a.labels == b.labels).all());
}

TEST_CASE("slic parameter validation") {
  GrayImage img(4, 4);
  img.setConstant(1);
  SlicParams p;
  p.k = 17;
  CHECK_THROWS_AS(slic(img, p), Error);  // k > pixel count
  p.k = 0;
  CHECK_THROWS_AS(slic(img, p), Error);
  p.k = 2;
  p.compactness = 0.0;
  CHECK_THROWS_AS(slic(img, p), Error);
}

TEST_CASE("superpixel_density counts hot fractions") {
  GrayImage img(10, 10);
  img.setConstant(0);
  SlicParams p;
  p.k = 4;
  const SuperpixelLabeling lab = slic(img, p);

  BinaryMask all(10, 10);
  all.setConstant(1);
  for (double d : superpixel_density(lab, all)) CHECK(d == doctest::Approx(1.0));

  BinaryMask none(10, 10);
  none.setZero();
  for (double d : superpixel_density(lab, none)) CHECK(d == doctest::Approx(0.0));

  // Half-hot label: mark half the pixels of label 0.
  BinaryMask half(10, 10);
  half.setZero();
  long long label0 = 0;
  for (int y = 0; y < 10; ++y)
    for (int x = 0; x < 10; ++x)
      if (lab.labels(y, x) == 0) ++label0;
  long long marked = 0;
  for (int y = 0; y < 10 && marked < label0 / 2; ++y)
    for (int x = 0; x < 10 && marked < label0 / 2; ++x)
      if (lab.labels(y, x) == 0) {
        half(y, x) = 1;
        ++marked;
      }
  const auto density = superpixel_density(lab, half);
  CHECK(density[0] == doctest::Approx(static_cast<double>(marked) / label0));
}

TEST_CASE("superpixel_density rejects mismatched shapes") {
  GrayImage img(8, 8);
  img.setConstant(0);
  SlicParams p;
  p.k = 2;
  const SuperpixelLabeling lab = slic(img, p);
  BinaryMask hot(8, 9);
  hot.setZero();
  CHECK_THROWS_AS(superpixel_density(lab, hot), Error);
}

#pragma once

#include <vector>

#include "roadaudit/core.hpp"

namespace roadaudit {

struct SlicParams {
  int k = 0;                 // requested superpixel count (>= 1)
  double compactness = 10.0; // spatial weight m
  int iterations = 10;
  int min_region = -1;       // connectivity floor in pixels; < 0 -> (S/2)^2
};

struct SuperpixelLabeling {
  LabelMap labels;  // dense ids in [0, count)
  int count = 0;

  Eigen::Index rows() const { return labels.rows(); }
  Eigen::Index cols() const { return labels.cols(); }
};

// Grayscale SLIC: grid-seeded k-means over (intensity, x, y) with the joint
// distance D = sqrt(d_c^2 + (d_s/S)^2 m^2), S = sqrt(N/k), assignment
// windows of 2S x 2S, then connectivity enforcement that merges fragments
// smaller than min_region into their largest 4-adjacent neighbour.
// Deterministic for fixed inputs. Throws Errc::k_too_large when k exceeds
// the pixel count and Errc::bad_param for invalid parameters.
SuperpixelLabeling slic(const GrayImage& img, const SlicParams& params);

// Fraction of hot pixels per label, indexed by label id.
// Throws Errc::dimension_mismatch when shapes differ.
std::vector<double> superpixel_density(const SuperpixelLabeling& lab,
                                       const BinaryMask& hot);

// Pixel count per label id.
std::vector<long long> superpixel_sizes(const SuperpixelLabeling& lab);

}  // namespace roadaudit

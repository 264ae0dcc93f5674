#pragma once

#include <Eigen/Dense>
#include <set>

#include "roadaudit/core.hpp"

namespace roadaudit {

// BT.601 luma, rounded to nearest.
GrayImage to_gray(const RgbImage& img);

// Foreground iff intensity - mean(window around pixel) > offset, strict.
// Borders replicate the nearest edge pixel. Window must be odd and positive
// (Errc::bad_window otherwise).
BinaryMask adaptive_threshold(const GrayImage& img, int window, double offset);

// |cross-correlation| with replicate borders. Kernel dimensions must be odd
// (Errc::bad_kernel otherwise).
ResponseMap convolve(const GrayImage& img, const Eigen::MatrixXd& kernel);

// Per-pixel max of |response| over four 3x3 first-derivative kernels
// (Sobel horizontal, vertical, and the two 45-degree diagonals).
ResponseMap filter_bank_response(const GrayImage& img);

// bit = 1 iff label is in `classes`.
BinaryMask extract_class_mask(const ClassMask& mask, const std::set<int>& classes);

// 3x3 erosion of a {0,1} mask: pixel kept iff every in-bounds 3x3 neighbour
// is foreground. Out-of-bounds neighbours replicate the edge, so the image
// border itself does not erode. Used to keep filter support inside a region
// of interest.
BinaryMask erode3(const BinaryMask& mask);

}  // namespace roadaudit

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace roadaudit {

// Every raster in the pipeline is a row-major Eigen array indexed (row, col),
// i.e. img(y, x). Row-major storage keeps .data() compatible with the raw
// netpbm pixel stream.
template <typename Scalar>
using ImageT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using GrayImage = ImageT<std::uint8_t>;    // intensities in [0, 255]
using ClassMask = ImageT<std::uint8_t>;    // semantic class id per pixel
using BinaryMask = ImageT<std::uint8_t>;   // values strictly {0, 1}
using ResponseMap = ImageT<float>;         // non-negative filter responses
using LabelMap = ImageT<std::int32_t>;     // superpixel / component labels

// Planar RGB; channels share dimensions.
struct RgbImage {
  ImageT<std::uint8_t> r, g, b;

  Eigen::Index rows() const { return r.rows(); }
  Eigen::Index cols() const { return r.cols(); }
};

enum class Errc {
  // file / format
  file_missing,
  malformed_header,
  truncated_data,
  io_error,
  // argument validation
  bad_window,
  bad_kernel,
  bad_param,
  dimension_mismatch,
  k_too_large,
  // geometry
  empty_input,
  degenerate,
  degenerate_hull,
  // sign analysis
  empty_region,
  zero_variance,
  no_pole,
  // gps track
  empty_track,
  non_monotone_timestamps,
  out_of_range_coordinate,
  malformed_row,
  // metrics
  no_ground_truth,
  no_classes,
  // orchestration
  manifest_invalid,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace roadaudit

#include "roadaudit/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>

namespace roadaudit {

namespace {

inline Eigen::Index clampi(Eigen::Index v, Eigen::Index lo, Eigen::Index hi) {
  return std::max(lo, std::min(v, hi));
}

}  // namespace

GrayImage to_gray(const RgbImage& img) {
  GrayImage out(img.rows(), img.cols());
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    for (Eigen::Index x = 0; x < img.cols(); ++x) {
      const double v = 0.299 * img.r(y, x) + 0.587 * img.g(y, x) +
                       0.114 * img.b(y, x);
      out(y, x) = static_cast<std::uint8_t>(
          std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

BinaryMask adaptive_threshold(const GrayImage& img, int window, double offset) {
  if (window <= 0 || window % 2 == 0)
    fail(Errc::bad_window, "window must be odd and positive");
  const Eigen::Index h = img.rows(), w = img.cols();
  const Eigen::Index r = window / 2;

  // Replicate-padded copy, then an integral image over it. Window sums are
  // exact integers, so the comparison p - sum/n > offset is computed as
  // p*n - sum > offset*n without rounding.
  const Eigen::Index ph = h + 2 * r, pw = w + 2 * r;
  ImageT<std::uint8_t> pad(ph, pw);
  for (Eigen::Index y = 0; y < ph; ++y)
    for (Eigen::Index x = 0; x < pw; ++x)
      pad(y, x) = img(clampi(y - r, 0, h - 1), clampi(x - r, 0, w - 1));

  ImageT<std::uint64_t> integral(ph + 1, pw + 1);
  integral.setZero();
  for (Eigen::Index y = 0; y < ph; ++y)
    for (Eigen::Index x = 0; x < pw; ++x)
      integral(y + 1, x + 1) = integral(y, x + 1) + integral(y + 1, x) -
                               integral(y, x) + pad(y, x);

  const std::int64_t n = static_cast<std::int64_t>(window) * window;
  BinaryMask out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      // Window centred at (y, x) spans padded rows [y, y+window).
      const std::uint64_t sum = integral(y + window, x + window) -
                                integral(y, x + window) -
                                integral(y + window, x) + integral(y, x);
      const std::int64_t lhs =
          static_cast<std::int64_t>(img(y, x)) * n - static_cast<std::int64_t>(sum);
      out(y, x) = static_cast<double>(lhs) > offset * static_cast<double>(n) ? 1 : 0;
    }
  }
  return out;
}

ResponseMap convolve(const GrayImage& img, const Eigen::MatrixXd& kernel) {
  if (kernel.rows() <= 0 || kernel.cols() <= 0 || kernel.rows() % 2 == 0 ||
      kernel.cols() % 2 == 0)
    fail(Errc::bad_kernel, "kernel dimensions must be odd");
  const Eigen::Index h = img.rows(), w = img.cols();
  const Eigen::Index cy = kernel.rows() / 2, cx = kernel.cols() / 2;
  ResponseMap out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
        const Eigen::Index sy = clampi(y + i - cy, 0, h - 1);
        for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
          const Eigen::Index sx = clampi(x + j - cx, 0, w - 1);
          acc += kernel(i, j) * img(sy, sx);
        }
      }
      out(y, x) = static_cast<float>(std::abs(acc));
    }
  }
  return out;
}

ResponseMap filter_bank_response(const GrayImage& img) {
  static const std::array<Eigen::Matrix3d, 4> bank = [] {
    std::array<Eigen::Matrix3d, 4> k;
    k[0] << -1, 0, 1, -2, 0, 2, -1, 0, 1;   // horizontal derivative
    k[1] << -1, -2, -1, 0, 0, 0, 1, 2, 1;   // vertical derivative
    k[2] << 0, 1, 2, -1, 0, 1, -2, -1, 0;   // 45-degree diagonal
    k[3] << -2, -1, 0, -1, 0, 1, 0, 1, 2;   // 135-degree diagonal
    return k;
  }();
  ResponseMap out = convolve(img, bank[0]);
  for (std::size_t i = 1; i < bank.size(); ++i)
    out = out.max(convolve(img, bank[i]));
  return out;
}

BinaryMask extract_class_mask(const ClassMask& mask, const std::set<int>& classes) {
  std::array<std::uint8_t, 256> lut{};
  for (int c : classes)
    if (c >= 0 && c < 256) lut[static_cast<std::size_t>(c)] = 1;
  BinaryMask out(mask.rows(), mask.cols());
  for (Eigen::Index y = 0; y < mask.rows(); ++y)
    for (Eigen::Index x = 0; x < mask.cols(); ++x)
      out(y, x) = lut[mask(y, x)];
  return out;
}

BinaryMask erode3(const BinaryMask& mask) {
  const Eigen::Index h = mask.rows(), w = mask.cols();
  BinaryMask out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      std::uint8_t keep = mask(y, x);
      for (Eigen::Index dy = -1; keep && dy <= 1; ++dy) {
        for (Eigen::Index dx = -1; keep && dx <= 1; ++dx) {
          const Eigen::Index ny = y + dy, nx = x + dx;
          if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
          keep = mask(ny, nx);
        }
      }
      out(y, x) = keep ? 1 : 0;
    }
  }
  return out;
}

}  // namespace roadaudit

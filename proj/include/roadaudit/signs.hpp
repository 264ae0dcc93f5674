#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "roadaudit/core.hpp"

namespace roadaudit {

struct DetectionBox {
  int frame_id = 0;
  int class_id = 0;
  double x = 0.0;  // top-left, pixels
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double score = 0.0;
};

// JSON-lines records {frame_id, class_id, x, y, w, h, score}, one per line.
// Throws Errc::malformed_row on unparseable lines.
std::vector<DetectionBox> parse_detections(std::string_view text);

using NormalizedCrop = ImageT<double>;  // 64x64, zero mean, unit variance

// Canonical non-damaged crops per class, loaded from a directory laid out
// as <class_id>/<n>.pgm.
class ReferenceLibrary {
 public:
  static ReferenceLibrary load(const std::filesystem::path& dir);

  void add(int class_id, NormalizedCrop crop);
  const std::vector<NormalizedCrop>* find(int class_id) const;
  bool empty() const { return crops_.empty(); }

 private:
  std::map<int, std::vector<NormalizedCrop>> crops_;
};

// Bilinear resample to 64x64, then zero-mean unit-variance normalisation.
// Throws Errc::empty_region / Errc::zero_variance.
NormalizedCrop normalize_crop(const GrayImage& region);

// Normalised cross-correlation of two normalised crops, in [-1, 1].
double sign_similarity(const NormalizedCrop& a, const NormalizedCrop& b);

// Max similarity over a class's references.
double best_similarity(const NormalizedCrop& crop,
                       const std::vector<NormalizedCrop>& refs);

// Angle of the pole axis from the image vertical, degrees in [0, 90).
// Picks the pole-class component nearest to the sign centroid (ties to the
// larger component), takes the minimum rotated rectangle of its pixels and
// measures the line through the edge midpoints closest to and furthest
// from the centroid. Throws Errc::no_pole when no pole pixels exist.
double pole_skew(const ClassMask& mask, int pole_class,
                 const Eigen::Vector2d& sign_centroid);

enum class SignStatus { ok, damaged, skewed, damaged_and_skewed };

struct SignCondition {
  SignStatus status = SignStatus::ok;
  std::optional<double> similarity;  // absent when the class has no references
  std::optional<double> skew_deg;    // absent when no pole was found
  bool similarity_skipped = false;   // unknown class or degenerate crop
};

struct SignParams {
  double sim_threshold = 0.6;
  double skew_threshold_deg = 10.0;
};

// Damaged iff best reference similarity < sim_threshold; skewed iff the
// pole skew is >= skew_threshold_deg. Missing pole or missing references
// skip the respective test instead of failing the frame.
SignCondition classify_sign(const DetectionBox& box, const GrayImage& frame,
                            const ClassMask& mask, int pole_class,
                            const ReferenceLibrary& lib, const SignParams& p);

}  // namespace roadaudit

#pragma once

#include <Eigen/Geometry>
#include <set>
#include <vector>

#include "roadaudit/core.hpp"

namespace roadaudit {

struct BarrierParams {
  std::set<int> barrier_classes;
  double right_threshold = 0.8;
  double left_threshold = 0.6;
  double min_area = 400.0;  // drops segmentation speckle
};

enum class Side { left, right };

struct BarrierAssessment {
  Side side = Side::left;
  double solidity = 0.0;
  bool safe = false;
  double area = 0.0;         // contour area, square pixels
  Eigen::AlignedBox2i bbox;  // inclusive pixel bounds
};

struct BarrierDiagnostics {
  int dropped_degenerate = 0;  // contours whose hull had no area
};

// Contour each barrier-class component, drop small contours, assign a side
// by centroid vs the frame midline and label safe iff solidity exceeds the
// side's threshold. Degenerate hulls are dropped and tallied.
std::vector<BarrierAssessment> assess_barriers(const ClassMask& mask,
                                               int frame_width,
                                               const BarrierParams& p,
                                               BarrierDiagnostics* diag = nullptr);

}  // namespace roadaudit

#pragma once

#include <Eigen/Geometry>
#include <set>
#include <vector>

#include "roadaudit/core.hpp"
#include "roadaudit/superpixel.hpp"

namespace roadaudit {

struct MarkingParams {
  std::set<int> marking_classes;
  int threshold_window = 15;
  double threshold_offset = -10.0;  // keeps pixels not much darker than their surround
  double density_threshold = 0.3;
  SlicParams slic;  // slic.k == 0 -> region area / 400
  int roi_pad = 8;  // padding around the refined region for SLIC
};

struct MarkingDamageRegion {
  std::vector<int> superpixels;  // flagged superpixel ids (roi-local)
  long long area = 0;            // total flagged pixel count
  double mean_density = 0.0;     // hot pixels / area over the region
  Eigen::AlignedBox2i bbox;      // inclusive pixel bounds, frame coordinates
};

// Fig. 8-style intermediates, filled when a sink is supplied.
struct MarkingDebug {
  BinaryMask refined;
  BinaryMask hot;      // frame-sized
  BinaryMask flagged;  // frame-sized union of flagged superpixels
};

// Marking-class mask AND adaptive threshold of the gray frame.
BinaryMask refine_marking_mask(const GrayImage& gray, const ClassMask& mask,
                               const MarkingParams& p);

// Refine -> derivative-bank response on the region interior -> Otsu split
// into a hot mask -> SLIC over the padded region box -> flag superpixels by
// hot density -> merge 4-adjacent flagged superpixels into regions.
std::vector<MarkingDamageRegion> marking_damage(const GrayImage& gray,
                                                const ClassMask& mask,
                                                const MarkingParams& p,
                                                MarkingDebug* debug = nullptr);

inline long long region_extent(const MarkingDamageRegion& r) { return r.area; }

// Threshold choice for the hot mask: Otsu over the response histogram,
// falling back to 0.1 * max when the split separates < 5% of the mass.
// Exposed for tests. Values must be non-negative; returns the strict
// lower bound for "hot".
float hot_threshold(const std::vector<float>& responses);

}  // namespace roadaudit

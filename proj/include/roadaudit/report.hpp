#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "roadaudit/core.hpp"
#include "roadaudit/findings.hpp"
#include "roadaudit/signs.hpp"

namespace roadaudit {

// GeoJSON FeatureCollection of Point features, coordinates [lon, lat],
// sorted by (frame_id, kind) so output is byte-stable.
std::string to_geojson(std::vector<GeoFinding> findings);

// Plain JSON listing for findings that could not be geolocated (no track);
// same sort and properties, no geometry.
std::string to_plain_report(std::vector<Finding> findings);

struct GroundTruthSet {
  std::vector<DetectionBox> boxes;
};

struct DetectionMapResult {
  std::map<int, double> per_class_ap;  // classes with >= 1 ground truth
  double mean_ap = 0.0;
};

// Per-class average precision under greedy IoU matching (predictions in
// descending score order) with all-points interpolation of the PR curve.
// Classes without ground truth are excluded from the mean; throws
// Errc::no_ground_truth when nothing has truth.
DetectionMapResult detection_map(const std::vector<DetectionBox>& predictions,
                                 const GroundTruthSet& truth,
                                 double iou_threshold);

// Mean per-class intersection-over-union over the given classes; classes
// absent from both masks are skipped. Throws Errc::dimension_mismatch and
// Errc::no_classes.
double mask_miou(const ClassMask& pred, const ClassMask& truth,
                 const std::set<int>& classes);

// IoU of two axis-aligned boxes.
double box_iou(const DetectionBox& a, const DetectionBox& b);

}  // namespace roadaudit

#include "roadaudit/report.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace roadaudit {

namespace {

using nlohmann::json;

json finding_properties(const Finding& f) {
  json props;
  props["kind"] = to_string(f.kind);
  props["frame_id"] = f.frame_id;
  if (f.subkind) props["subkind"] = to_string(*f.subkind);
  if (f.extent) props["extent"] = *f.extent;
  if (f.score) props["score"] = *f.score;
  for (const auto& [key, value] : f.detail) props[key] = value;
  for (const auto& [key, value] : f.detail_text) props[key] = value;
  return props;
}

bool finding_order(const Finding& a, const Finding& b) {
  if (a.frame_id != b.frame_id) return a.frame_id < b.frame_id;
  return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

}  // namespace

std::string to_geojson(std::vector<GeoFinding> findings) {
  std::stable_sort(findings.begin(), findings.end(),
                   [](const GeoFinding& a, const GeoFinding& b) {
                     return finding_order(a.finding, b.finding);
                   });
  json features = json::array();
  for (const GeoFinding& gf : findings) {
    json feature;
    feature["type"] = "Feature";
    feature["geometry"]["type"] = "Point";
    feature["geometry"]["coordinates"] = {gf.lon, gf.lat};
    feature["properties"] = finding_properties(gf.finding);
    features.push_back(std::move(feature));
  }
  json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

std::string to_plain_report(std::vector<Finding> findings) {
  std::stable_sort(findings.begin(), findings.end(), finding_order);
  json items = json::array();
  for (const Finding& f : findings) items.push_back(finding_properties(f));
  json doc;
  doc["findings"] = std::move(items);
  return doc.dump(2) + "\n";
}

double box_iou(const DetectionBox& a, const DetectionBox& b) {
  const double ix0 = std::max(a.x, b.x);
  const double iy0 = std::max(a.y, b.y);
  const double ix1 = std::min(a.x + a.w, b.x + b.w);
  const double iy1 = std::min(a.y + a.h, b.y + b.h);
  const double iw = std::max(0.0, ix1 - ix0);
  const double ih = std::max(0.0, iy1 - iy0);
  const double inter = iw * ih;
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

DetectionMapResult detection_map(const std::vector<DetectionBox>& predictions,
                                 const GroundTruthSet& truth,
                                 double iou_threshold) {
  if (iou_threshold <= 0.0 || iou_threshold >= 1.0)
    fail(Errc::bad_param, "iou_threshold must be in (0, 1)");

  std::set<int> classes;
  for (const DetectionBox& b : truth.boxes) classes.insert(b.class_id);
  if (classes.empty()) fail(Errc::no_ground_truth, "no class has ground truth");

  DetectionMapResult result;
  for (int cls : classes) {
    std::vector<const DetectionBox*> gts;
    for (const DetectionBox& b : truth.boxes)
      if (b.class_id == cls) gts.push_back(&b);

    std::vector<const DetectionBox*> preds;
    for (const DetectionBox& b : predictions)
      if (b.class_id == cls) preds.push_back(&b);
    std::stable_sort(preds.begin(), preds.end(),
                     [](const DetectionBox* a, const DetectionBox* b) {
                       return a->score > b->score;
                     });

    // Greedy matching in rank order: best unmatched same-frame truth box.
    std::vector<char> matched(gts.size(), 0);
    std::vector<char> is_tp(preds.size(), 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      double best_iou = 0.0;
      std::ptrdiff_t best_gt = -1;
      for (std::size_t g = 0; g < gts.size(); ++g) {
        if (matched[g] || gts[g]->frame_id != preds[i]->frame_id) continue;
        const double iou = box_iou(*preds[i], *gts[g]);
        if (iou >= iou_threshold && iou > best_iou) {
          best_iou = iou;
          best_gt = static_cast<std::ptrdiff_t>(g);
        }
      }
      if (best_gt >= 0) {
        matched[static_cast<std::size_t>(best_gt)] = 1;
        is_tp[i] = 1;
      }
    }

    // Precision-recall curve with the interpolated (monotone) envelope.
    const double n_truth = static_cast<double>(gts.size());
    std::vector<double> recall(preds.size()), precision(preds.size());
    double tp = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      tp += is_tp[i];
      recall[i] = tp / n_truth;
      precision[i] = tp / static_cast<double>(i + 1);
    }
    for (std::size_t i = precision.size(); i-- > 1;)
      precision[i - 1] = std::max(precision[i - 1], precision[i]);

    double ap = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      ap += (recall[i] - prev_recall) * precision[i];
      prev_recall = recall[i];
    }
    result.per_class_ap[cls] = ap;
  }

  double sum = 0.0;
  for (const auto& [cls, ap] : result.per_class_ap) sum += ap;
  result.mean_ap = sum / static_cast<double>(result.per_class_ap.size());
  return result;
}

double mask_miou(const ClassMask& pred, const ClassMask& truth,
                 const std::set<int>& classes) {
  if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
    fail(Errc::dimension_mismatch, "mask dimensions differ");

  double sum = 0.0;
  int counted = 0;
  for (int cls : classes) {
    if (cls < 0 || cls > 255) continue;
    long long inter = 0, uni = 0;
    const auto c = static_cast<std::uint8_t>(cls);
    for (Eigen::Index y = 0; y < pred.rows(); ++y) {
      for (Eigen::Index x = 0; x < pred.cols(); ++x) {
        const bool in_pred = pred(y, x) == c;
        const bool in_truth = truth(y, x) == c;
        inter += in_pred && in_truth;
        uni += in_pred || in_truth;
      }
    }
    if (uni == 0) continue;  // class absent from both masks
    sum += static_cast<double>(inter) / static_cast<double>(uni);
    ++counted;
  }
  if (counted == 0) fail(Errc::no_classes, "no requested class present");
  return sum / counted;
}

}  // namespace roadaudit

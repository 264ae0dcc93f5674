#include "roadaudit/barriers.hpp"

#include "roadaudit/geometry.hpp"
#include "roadaudit/raster.hpp"

namespace roadaudit {

std::vector<BarrierAssessment> assess_barriers(const ClassMask& mask,
                                               int frame_width,
                                               const BarrierParams& p,
                                               BarrierDiagnostics* diag) {
  const BinaryMask bits = extract_class_mask(mask, p.barrier_classes);
  std::vector<BarrierAssessment> out;
  for (const Contour& c : trace_contours(bits)) {
    if (c.hole) continue;
    const double area = contour_area(c);
    if (area < p.min_area) continue;

    BarrierAssessment a;
    try {
      a.solidity = solidity(c);
    } catch (const Error& e) {
      if (e.code() != Errc::degenerate_hull) throw;
      if (diag) ++diag->dropped_degenerate;
      continue;
    }

    double cx = 0.0;
    for (const Point& pt : c.points) {
      cx += pt.x();
      a.bbox.extend(pt);
    }
    cx /= static_cast<double>(c.points.size());

    a.side = cx < frame_width / 2.0 ? Side::left : Side::right;
    a.area = area;
    const double threshold =
        a.side == Side::right ? p.right_threshold : p.left_threshold;
    a.safe = a.solidity > threshold;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace roadaudit

#include "roadaudit/marking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "roadaudit/geometry.hpp"
#include "roadaudit/raster.hpp"

namespace roadaudit {

namespace {

void require_same_shape(const GrayImage& a, const ClassMask& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(Errc::dimension_mismatch, "frame and mask dimensions differ");
}

}  // namespace

BinaryMask refine_marking_mask(const GrayImage& gray, const ClassMask& mask,
                               const MarkingParams& p) {
  require_same_shape(gray, mask);
  const BinaryMask classes = extract_class_mask(mask, p.marking_classes);
  const BinaryMask bright =
      adaptive_threshold(gray, p.threshold_window, p.threshold_offset);
  return classes.min(bright);
}

float hot_threshold(const std::vector<float>& responses) {
  float max_r = 0.0f;
  for (float r : responses) max_r = std::max(max_r, r);
  if (max_r <= 0.0f) return 0.0f;  // nothing responds; "> 0" keeps hot empty

  constexpr int kBins = 256;
  std::vector<long long> hist(kBins, 0);
  for (float r : responses) {
    int b = static_cast<int>(r / max_r * (kBins - 1));
    ++hist[std::clamp(b, 0, kBins - 1)];
  }
  const long long total = static_cast<long long>(responses.size());

  // Otsu: maximise between-class variance over the split bin. Equal-variance
  // plateaus (empty bins between two modes) resolve to their midpoint so the
  // threshold lands between the modes, not inside the lower one.
  double sum_all = 0.0;
  for (int b = 0; b < kBins; ++b) sum_all += static_cast<double>(b) * hist[b];
  double best_var = -1.0;
  int plateau_first = 0, plateau_last = 0;
  long long w0 = 0;
  double sum0 = 0.0;
  for (int b = 0; b < kBins - 1; ++b) {
    w0 += hist[b];
    sum0 += static_cast<double>(b) * hist[b];
    const long long w1 = total - w0;
    if (w0 == 0 || w1 == 0) continue;
    const double m0 = sum0 / w0, m1 = (sum_all - sum0) / w1;
    const double var = static_cast<double>(w0) * w1 * (m0 - m1) * (m0 - m1);
    if (var > best_var) {
      best_var = var;
      plateau_first = plateau_last = b;
    } else if (var == best_var) {
      plateau_last = b;
    }
  }
  if (best_var < 0.0) return 0.1f * max_r;  // single occupied bin
  const int best_bin = (plateau_first + plateau_last) / 2;

  long long below = 0;
  for (int b = 0; b <= best_bin; ++b) below += hist[b];
  const double minority =
      static_cast<double>(std::min(below, total - below)) / total;
  if (minority < 0.05) return 0.1f * max_r;  // unimodal fallback

  return static_cast<float>((best_bin + 0.5) / (kBins - 1) * max_r);
}

std::vector<MarkingDamageRegion> marking_damage(const GrayImage& gray,
                                                const ClassMask& mask,
                                                const MarkingParams& p,
                                                MarkingDebug* debug) {
  require_same_shape(gray, mask);
  const int w = static_cast<int>(gray.cols()), h = static_cast<int>(gray.rows());

  const BinaryMask refined = refine_marking_mask(gray, mask, p);
  if (debug) debug->refined = refined;

  // Bounding box of the refined region.
  int x0 = w, y0 = h, x1 = -1, y1 = -1;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!refined(y, x)) continue;
      x0 = std::min(x0, x);
      y0 = std::min(y0, y);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) {
    if (debug) {
      debug->hot = BinaryMask::Zero(h, w);
      debug->flagged = BinaryMask::Zero(h, w);
    }
    return {};
  }
  x0 = std::max(0, x0 - p.roi_pad);
  y0 = std::max(0, y0 - p.roi_pad);
  x1 = std::min(w - 1, x1 + p.roi_pad);
  y1 = std::min(h - 1, y1 + p.roi_pad);
  const int rw = x1 - x0 + 1, rh = y1 - y0 + 1;

  // Texture response is scored on the region interior only: candidate
  // pixels are refined pixels whose 3x3 filter support stays inside the
  // marking classes, so the marking/road transition itself never counts
  // as damage texture.
  const BinaryMask support = erode3(extract_class_mask(mask, p.marking_classes));
  const ResponseMap response = filter_bank_response(gray);

  std::vector<float> candidate_values;
  candidate_values.reserve(static_cast<std::size_t>(rw) * rh);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (refined(y, x) && support(y, x))
        candidate_values.push_back(response(y, x));

  const float threshold = hot_threshold(candidate_values);
  BinaryMask hot = BinaryMask::Zero(h, w);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (refined(y, x) && support(y, x) && response(y, x) > threshold)
        hot(y, x) = 1;
  if (debug) debug->hot = hot;

  // Superpixels over the padded region box.
  SlicParams sp = p.slic;
  if (sp.k <= 0) sp.k = std::max(1, rw * rh / 400);
  sp.k = std::min<long long>(sp.k, static_cast<long long>(rw) * rh);
  GrayImage roi = gray.block(y0, x0, rh, rw);
  const SuperpixelLabeling lab = slic(roi, sp);

  BinaryMask hot_roi = hot.block(y0, x0, rh, rw);
  const std::vector<double> density = superpixel_density(lab, hot_roi);
  const std::vector<long long> sizes = superpixel_sizes(lab);

  // A superpixel is flagged when its hot density clears the threshold and
  // it touches the refined marking at all.
  std::vector<char> intersects(static_cast<std::size_t>(lab.count), 0);
  std::vector<long long> hot_in(static_cast<std::size_t>(lab.count), 0);
  for (int y = 0; y < rh; ++y) {
    for (int x = 0; x < rw; ++x) {
      const auto id = static_cast<std::size_t>(lab.labels(y, x));
      if (refined(y0 + y, x0 + x)) intersects[id] = 1;
      if (hot_roi(y, x)) ++hot_in[id];
    }
  }

  std::vector<char> flagged(static_cast<std::size_t>(lab.count), 0);
  for (int id = 0; id < lab.count; ++id)
    flagged[id] = density[id] > p.density_threshold && intersects[id] ? 1 : 0;

  if (debug) {
    debug->flagged = BinaryMask::Zero(h, w);
    for (int y = 0; y < rh; ++y)
      for (int x = 0; x < rw; ++x)
        if (flagged[static_cast<std::size_t>(lab.labels(y, x))])
          debug->flagged(y0 + y, x0 + x) = 1;
  }

  // Merge flagged superpixels that share a 4-adjacent pixel pair.
  std::vector<int> group(static_cast<std::size_t>(lab.count));
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int a) {
    while (group[a] != a) a = group[a] = group[group[a]];
    return a;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) group[std::max(a, b)] = std::min(a, b);
  };
  for (int y = 0; y < rh; ++y) {
    for (int x = 0; x < rw; ++x) {
      const int a = lab.labels(y, x);
      if (!flagged[a]) continue;
      if (x + 1 < rw) {
        const int b = lab.labels(y, x + 1);
        if (b != a && flagged[b]) unite(a, b);
      }
      if (y + 1 < rh) {
        const int b = lab.labels(y + 1, x);
        if (b != a && flagged[b]) unite(a, b);
      }
    }
  }

  std::map<int, MarkingDamageRegion> regions;  // keyed by group root
  std::map<int, long long> hot_counts;
  for (int id = 0; id < lab.count; ++id) {
    if (!flagged[id]) continue;
    MarkingDamageRegion& r = regions[find(id)];
    r.superpixels.push_back(id);
    r.area += sizes[static_cast<std::size_t>(id)];
    hot_counts[find(id)] += hot_in[static_cast<std::size_t>(id)];
  }
  for (int y = 0; y < rh; ++y) {
    for (int x = 0; x < rw; ++x) {
      const int id = lab.labels(y, x);
      if (!flagged[id]) continue;
      regions[find(id)].bbox.extend(Point(x0 + x, y0 + y));
    }
  }

  std::vector<MarkingDamageRegion> out;
  out.reserve(regions.size());
  for (auto& [root, region] : regions) {
    region.mean_density =
        static_cast<double>(hot_counts[root]) / static_cast<double>(region.area);
    out.push_back(std::move(region));
  }
  return out;
}

}  // namespace roadaudit

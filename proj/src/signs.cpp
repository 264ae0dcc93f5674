#include "roadaudit/signs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <nlohmann/json.hpp>

#include "roadaudit/geometry.hpp"
#include "roadaudit/netpbm.hpp"

namespace roadaudit {

namespace {

constexpr int kCropSize = 64;

struct Component {
  std::vector<Point> pixels;
  Eigen::Vector2d bbox_centroid{0.0, 0.0};
};

// 8-connected components of a single class id.
std::vector<Component> class_components(const ClassMask& mask, int class_id) {
  const int h = static_cast<int>(mask.rows()), w = static_cast<int>(mask.cols());
  ImageT<std::uint8_t> seen(h, w);
  seen.setZero();
  std::vector<Component> comps;
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (seen(y, x) || mask(y, x) != class_id) continue;
      Component comp;
      int min_x = x, max_x = x, min_y = y, max_y = y;
      stack.push_back(y * w + x);
      seen(y, x) = 1;
      while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        const int py = p / w, px = p % w;
        comp.pixels.push_back(Point(px, py));
        min_x = std::min(min_x, px);
        max_x = std::max(max_x, px);
        min_y = std::min(min_y, py);
        max_y = std::max(max_y, py);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int ny = py + dy, nx = px + dx;
            if (ny < 0 || ny >= h || nx < 0 || nx >= w) continue;
            if (seen(ny, nx) || mask(ny, nx) != class_id) continue;
            seen(ny, nx) = 1;
            stack.push_back(ny * w + nx);
          }
        }
      }
      comp.bbox_centroid =
          Eigen::Vector2d((min_x + max_x) / 2.0, (min_y + max_y) / 2.0);
      comps.push_back(std::move(comp));
    }
  }
  return comps;
}

}  // namespace

std::vector<DetectionBox> parse_detections(std::string_view text) {
  std::vector<DetectionBox> boxes;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    // allow blank lines
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      fail(Errc::malformed_row,
           "detections line " + std::to_string(line_no) + " is not valid JSON");
    try {
      DetectionBox b;
      b.frame_id = j.at("frame_id").get<int>();
      b.class_id = j.at("class_id").get<int>();
      b.x = j.at("x").get<double>();
      b.y = j.at("y").get<double>();
      b.w = j.at("w").get<double>();
      b.h = j.at("h").get<double>();
      b.score = j.value("score", 0.0);
      if (b.w <= 0 || b.h <= 0)
        fail(Errc::malformed_row, "detections line " + std::to_string(line_no) +
                                      ": box must have positive size");
      boxes.push_back(b);
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::malformed_row,
           "detections line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return boxes;
}

NormalizedCrop normalize_crop(const GrayImage& region) {
  const Eigen::Index h = region.rows(), w = region.cols();
  if (h <= 0 || w <= 0) fail(Errc::empty_region, "empty crop region");

  NormalizedCrop out(kCropSize, kCropSize);
  const double sx = static_cast<double>(w) / kCropSize;
  const double sy = static_cast<double>(h) / kCropSize;
  for (int i = 0; i < kCropSize; ++i) {
    const double fy = std::clamp((i + 0.5) * sy - 0.5, 0.0, h - 1.0);
    const Eigen::Index iy0 = static_cast<Eigen::Index>(fy);
    const Eigen::Index iy1 = std::min(iy0 + 1, h - 1);
    const double wy = fy - static_cast<double>(iy0);
    for (int j = 0; j < kCropSize; ++j) {
      const double fx = std::clamp((j + 0.5) * sx - 0.5, 0.0, w - 1.0);
      const Eigen::Index ix0 = static_cast<Eigen::Index>(fx);
      const Eigen::Index ix1 = std::min(ix0 + 1, w - 1);
      const double wx = fx - static_cast<double>(ix0);
      out(i, j) = (1 - wy) * ((1 - wx) * region(iy0, ix0) + wx * region(iy0, ix1)) +
                  wy * ((1 - wx) * region(iy1, ix0) + wx * region(iy1, ix1));
    }
  }

  const double mean = out.mean();
  out -= mean;
  const double sigma = std::sqrt(out.square().mean());
  if (sigma < 1e-6) fail(Errc::zero_variance, "crop has no contrast");
  out /= sigma;
  return out;
}

double sign_similarity(const NormalizedCrop& a, const NormalizedCrop& b) {
  return (a * b).mean();
}

double best_similarity(const NormalizedCrop& crop,
                       const std::vector<NormalizedCrop>& refs) {
  double best = -1.0;
  for (const NormalizedCrop& r : refs)
    best = std::max(best, sign_similarity(crop, r));
  return best;
}

ReferenceLibrary ReferenceLibrary::load(const std::filesystem::path& dir) {
  ReferenceLibrary lib;
  if (!std::filesystem::is_directory(dir))
    fail(Errc::file_missing, "reference library directory missing: " + dir.string());
  std::vector<std::filesystem::path> class_dirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_directory()) class_dirs.push_back(entry.path());
  std::sort(class_dirs.begin(), class_dirs.end());
  for (const auto& class_dir : class_dirs) {
    int class_id = 0;
    try {
      class_id = std::stoi(class_dir.filename().string());
    } catch (...) {
      continue;  // non-numeric directory names are not classes
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(class_dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files)
      lib.add(class_id, normalize_crop(load_pgm(file)));
  }
  return lib;
}

void ReferenceLibrary::add(int class_id, NormalizedCrop crop) {
  crops_[class_id].push_back(std::move(crop));
}

const std::vector<NormalizedCrop>* ReferenceLibrary::find(int class_id) const {
  const auto it = crops_.find(class_id);
  return it == crops_.end() ? nullptr : &it->second;
}

double pole_skew(const ClassMask& mask, int pole_class,
                 const Eigen::Vector2d& sign_centroid) {
  const std::vector<Component> comps = class_components(mask, pole_class);
  if (comps.empty()) fail(Errc::no_pole, "no pole-class pixels in mask");

  // Nearest component by bounding-box centroid; ties go to the larger one.
  std::size_t pick = 0;
  double pick_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const double d = (comps[i].bbox_centroid - sign_centroid).norm();
    if (d < pick_dist - 1e-12 ||
        (std::abs(d - pick_dist) <= 1e-12 &&
         comps[i].pixels.size() > comps[pick].pixels.size())) {
      pick = i;
      pick_dist = d;
    }
  }

  const RotatedRect rect = min_area_rect(comps[pick].pixels);

  // Edge midpoints of the rectangle.
  const double rad = rect.angle_deg * std::numbers::pi / 180.0;
  const Eigen::Vector2d u(std::cos(rad), std::sin(rad));   // width axis
  const Eigen::Vector2d v(-u.y(), u.x());                  // height axis
  const Eigen::Vector2d hw = 0.5 * rect.width * u;
  const Eigen::Vector2d hh = 0.5 * rect.height * v;
  const Eigen::Vector2d mids[4] = {
      rect.center + hw,  // midpoint of each edge
      rect.center - hw,
      rect.center + hh,
      rect.center - hh,
  };

  int near = 0, far = 0;
  double dn = std::numeric_limits<double>::infinity(), df = -1.0;
  for (int i = 0; i < 4; ++i) {
    const double d = (mids[i] - sign_centroid).norm();
    if (d < dn) {
      dn = d;
      near = i;
    }
    if (d > df) {
      df = d;
      far = i;
    }
  }

  const Eigen::Vector2d axis = mids[far] - mids[near];
  if (axis.norm() < 1e-9) return 0.0;
  return std::atan2(std::abs(axis.x()), std::abs(axis.y())) * 180.0 /
         std::numbers::pi;
}

SignCondition classify_sign(const DetectionBox& box, const GrayImage& frame,
                            const ClassMask& mask, int pole_class,
                            const ReferenceLibrary& lib, const SignParams& p) {
  SignCondition cond;

  // Clamp the box to the frame before cropping.
  const int fw = static_cast<int>(frame.cols()), fh = static_cast<int>(frame.rows());
  const int x0 = std::clamp(static_cast<int>(std::floor(box.x)), 0, fw - 1);
  const int y0 = std::clamp(static_cast<int>(std::floor(box.y)), 0, fh - 1);
  const int x1 = std::clamp(static_cast<int>(std::ceil(box.x + box.w)), x0 + 1, fw);
  const int y1 = std::clamp(static_cast<int>(std::ceil(box.y + box.h)), y0 + 1, fh);

  bool damaged = false;
  const std::vector<NormalizedCrop>* refs = lib.find(box.class_id);
  if (refs == nullptr) {
    cond.similarity_skipped = true;  // unknown class: report, do not fail
  } else {
    try {
      const GrayImage crop = frame.block(y0, x0, y1 - y0, x1 - x0);
      cond.similarity = best_similarity(normalize_crop(crop), *refs);
      damaged = *cond.similarity < p.sim_threshold;
    } catch (const Error& e) {
      if (e.code() != Errc::zero_variance && e.code() != Errc::empty_region)
        throw;
      cond.similarity_skipped = true;  // featureless crop cannot be compared
    }
  }

  bool skewed = false;
  const Eigen::Vector2d centroid(box.x + box.w / 2.0, box.y + box.h / 2.0);
  try {
    cond.skew_deg = pole_skew(mask, pole_class, centroid);
    skewed = *cond.skew_deg >= p.skew_threshold_deg;
  } catch (const Error& e) {
    if (e.code() != Errc::no_pole) throw;
    // no pole found: skew test skipped, skew_deg stays absent
  }

  if (damaged && skewed)
    cond.status = SignStatus::damaged_and_skewed;
  else if (damaged)
    cond.status = SignStatus::damaged;
  else if (skewed)
    cond.status = SignStatus::skewed;
  else
    cond.status = SignStatus::ok;
  return cond;
}

}  // namespace roadaudit

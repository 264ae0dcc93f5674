#include "roadaudit/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "roadaudit/geometry.hpp"
#include "roadaudit/netpbm.hpp"
#include "roadaudit/raster.hpp"
#include "roadaudit/report.hpp"

namespace roadaudit {

namespace {

struct FrameResult {
  std::vector<Finding> findings;
  int dropped_contours = 0;
  int skipped_signs = 0;
  int unmapped_detections = 0;
  std::string error;  // non-empty when the frame failed
};

GrayImage load_frame_gray(const std::filesystem::path& path) {
  LoadedImage img = load_image(path);
  if (std::holds_alternative<GrayImage>(img))
    return std::get<GrayImage>(std::move(img));
  return to_gray(std::get<RgbImage>(img));
}

void dump_debug(const std::filesystem::path& dir, int frame_id,
                const MarkingDebug& dbg) {
  std::filesystem::create_directories(dir);
  const std::string stem = "frame_" + std::to_string(frame_id) + "_";
  save_pgm(dir / (stem + "refined.pgm"), dbg.refined * std::uint8_t{255});
  save_pgm(dir / (stem + "hot.pgm"), dbg.hot * std::uint8_t{255});
  save_pgm(dir / (stem + "flagged.pgm"), dbg.flagged * std::uint8_t{255});
}

FrameResult analyze_frame(const SceneManifest& m, const FrameEntry& entry,
                          const ReferenceLibrary& lib,
                          const std::filesystem::path& debug_dir) {
  FrameResult result;
  try {
    const GrayImage gray = load_frame_gray(m.resolve(entry.image_path));
    const ClassMask mask = load_pgm(m.resolve(entry.mask_path));

    // Upstream detections: road-damage passthrough and sign assessment.
    std::vector<DetectionBox> detections;
    if (entry.detections_path) {
      std::ifstream in(m.resolve(*entry.detections_path));
      if (!in)
        fail(Errc::file_missing,
             "cannot open " + m.resolve(*entry.detections_path).string());
      std::ostringstream buf;
      buf << in.rdbuf();
      detections = parse_detections(buf.str());
    }

    for (const DetectionBox& box : detections) {
      if (const auto it = m.road_damage_classes.find(box.class_id);
          it != m.road_damage_classes.end()) {
        Finding f;
        f.frame_id = entry.frame_id;
        f.kind = FindingKind::road_damage;
        f.subkind = it->second;
        if (m.extent_from_box) f.extent = box.w * box.h;
        f.score = box.score;
        result.findings.push_back(std::move(f));
      } else if (m.sign_classes.count(box.class_id)) {
        const SignCondition cond =
            classify_sign(box, gray, mask, m.pole_class, lib, m.sign);
        if (cond.similarity_skipped) ++result.skipped_signs;
        if (cond.status == SignStatus::damaged ||
            cond.status == SignStatus::damaged_and_skewed) {
          Finding f;
          f.frame_id = entry.frame_id;
          f.kind = FindingKind::sign_damaged;
          f.score = box.score;
          f.detail["similarity"] = *cond.similarity;
          result.findings.push_back(std::move(f));
        }
        if (cond.status == SignStatus::skewed ||
            cond.status == SignStatus::damaged_and_skewed) {
          Finding f;
          f.frame_id = entry.frame_id;
          f.kind = FindingKind::sign_skewed;
          f.score = box.score;
          f.detail["skew_deg"] = *cond.skew_deg;
          result.findings.push_back(std::move(f));
        }
      } else {
        ++result.unmapped_detections;
      }
    }

    // Marking damage.
    MarkingDebug dbg;
    MarkingDebug* dbg_ptr = debug_dir.empty() ? nullptr : &dbg;
    for (const MarkingDamageRegion& region :
         marking_damage(gray, mask, m.marking, dbg_ptr)) {
      Finding f;
      f.frame_id = entry.frame_id;
      f.kind = FindingKind::marking_damage;
      f.extent = static_cast<double>(region.area);
      f.detail["mean_density"] = region.mean_density;
      result.findings.push_back(std::move(f));
    }
    if (dbg_ptr) dump_debug(debug_dir, entry.frame_id, dbg);

    // Barrier safety.
    BarrierDiagnostics barrier_diag;
    for (const BarrierAssessment& a :
         assess_barriers(mask, static_cast<int>(mask.cols()), m.barrier,
                         &barrier_diag)) {
      if (a.safe) continue;
      Finding f;
      f.frame_id = entry.frame_id;
      f.kind = FindingKind::barrier_unsafe;
      f.extent = a.area;
      f.detail["solidity"] = a.solidity;
      f.detail_text["side"] = a.side == Side::left ? "left" : "right";
      result.findings.push_back(std::move(f));
    }
    result.dropped_contours = barrier_diag.dropped_degenerate;
  } catch (const std::exception& e) {
    result.error = e.what();
    result.findings.clear();
  }
  return result;
}

}  // namespace

std::string RunSummary::to_text() const {
  std::ostringstream out;
  out << "frames processed: " << frames_processed << "\n";
  if (frames_failed > 0) out << "frames failed: " << frames_failed << "\n";
  out << "findings:\n";
  if (finding_counts.empty()) out << "  (none)\n";
  for (const auto& [kind, count] : finding_counts)
    out << "  " << kind << ": " << count << "\n";
  if (dropped_contours > 0)
    out << "dropped degenerate contours: " << dropped_contours << "\n";
  if (skipped_signs > 0)
    out << "signs with skipped similarity: " << skipped_signs << "\n";
  if (unmapped_detections > 0)
    out << "unmapped detections: " << unmapped_detections << "\n";
  for (const std::string& d : diagnostics) out << "warning: " << d << "\n";
  return out.str();
}

RunSummary run_scene(const SceneManifest& manifest, const RunOptions& options) {
  ReferenceLibrary lib;
  if (manifest.reference_library)
    lib = ReferenceLibrary::load(manifest.resolve(*manifest.reference_library));

  // Each frame is analyzed independently; results land in per-frame slots
  // so the aggregate never depends on completion order.
  std::vector<FrameResult> results(manifest.frames.size());
  const int jobs =
      std::max(1, std::min<int>(options.jobs,
                                static_cast<int>(manifest.frames.size() + 1)));
  if (jobs == 1 || manifest.frames.size() <= 1) {
    for (std::size_t i = 0; i < manifest.frames.size(); ++i)
      results[i] =
          analyze_frame(manifest, manifest.frames[i], lib, options.debug_dir);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < manifest.frames.size();
             i = next.fetch_add(1)) {
          results[i] = analyze_frame(manifest, manifest.frames[i], lib,
                                     options.debug_dir);
        }
      });
    }
    for (std::thread& w : workers) w.join();
  }

  RunSummary summary;
  std::vector<Finding> findings;
  for (std::size_t i = 0; i < results.size(); ++i) {
    FrameResult& r = results[i];
    if (!r.error.empty()) {
      ++summary.frames_failed;
      summary.diagnostics.push_back(
          "frame " + std::to_string(manifest.frames[i].frame_id) + ": " + r.error);
      continue;
    }
    ++summary.frames_processed;
    summary.dropped_contours += r.dropped_contours;
    summary.skipped_signs += r.skipped_signs;
    summary.unmapped_detections += r.unmapped_detections;
    for (Finding& f : r.findings) findings.push_back(std::move(f));
  }
  for (const Finding& f : findings)
    ++summary.finding_counts[to_string(f.kind)];

  std::string report;
  if (manifest.track_path) {
    std::ifstream in(manifest.resolve(*manifest.track_path));
    if (!in)
      fail(Errc::file_missing,
           "cannot open track " + manifest.resolve(*manifest.track_path).string());
    std::ostringstream buf;
    buf << in.rdbuf();
    report = to_geojson(geolocate(findings, parse_track(buf.str()), manifest.clock));
  } else {
    // No track: emit an empty map plus a parallel non-geographic report so
    // findings are not silently dropped.
    report = to_geojson({});
    std::filesystem::path side = options.output_path;
    side.replace_extension(".findings.json");
    std::ofstream out(side, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io_error, "cannot write " + side.string());
    out << to_plain_report(findings);
    if (!out) fail(Errc::io_error, "short write to " + side.string());
  }

  std::ofstream out(options.output_path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot write " + options.output_path.string());
  out << report;
  out.flush();
  if (!out) fail(Errc::io_error, "short write to " + options.output_path.string());

  return summary;
}

}  // namespace roadaudit

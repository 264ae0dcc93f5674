#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "roadaudit/manifest.hpp"

namespace roadaudit {

struct RunOptions {
  std::filesystem::path output_path;
  std::filesystem::path debug_dir;  // empty = no intermediate dumps
  int jobs = 1;
};

struct RunSummary {
  std::map<std::string, int> finding_counts;  // by kind name
  int frames_processed = 0;
  int frames_failed = 0;
  int dropped_contours = 0;     // degenerate barrier hulls
  int skipped_signs = 0;        // unknown class or featureless crop
  int unmapped_detections = 0;  // detection class ids not in class_map
  std::vector<std::string> diagnostics;  // per-frame failure notes

  std::string to_text() const;
};

// Runs every analyzer over the scene and writes the GeoJSON report.
// Per-frame failures are recorded as diagnostics without aborting; output
// I/O failures throw Errc::io_error. Output is byte-identical for
// identical inputs regardless of the worker count.
RunSummary run_scene(const SceneManifest& manifest, const RunOptions& options);

}  // namespace roadaudit

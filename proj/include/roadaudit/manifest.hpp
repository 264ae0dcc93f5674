#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "roadaudit/barriers.hpp"
#include "roadaudit/core.hpp"
#include "roadaudit/geotag.hpp"
#include "roadaudit/marking.hpp"
#include "roadaudit/signs.hpp"

namespace roadaudit {

struct FrameEntry {
  int frame_id = 0;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
  std::optional<std::filesystem::path> detections_path;
};

// One JSON document describing a scene run: inputs, class ids and every
// analyzer tunable, so a run is reproducible from manifest + inputs.
struct SceneManifest {
  std::vector<FrameEntry> frames;
  std::map<std::string, std::set<int>> class_map;
  std::optional<std::filesystem::path> track_path;
  std::optional<std::filesystem::path> reference_library;
  FrameClock clock;

  MarkingParams marking;
  BarrierParams barrier;
  SignParams sign;
  bool extent_from_box = true;

  // Resolved class ids (filled by the parser from class_map).
  std::set<int> sign_classes;
  int pole_class = -1;
  std::map<int, RoadDamageKind> road_damage_classes;

  std::filesystem::path base_dir;  // manifest directory; relative paths resolve against it

  std::filesystem::path resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : base_dir / p;
  }
};

// Parses and structurally validates; throws Errc::manifest_invalid with a
// message naming the offending field.
SceneManifest parse_manifest(const std::filesystem::path& path);

// Non-throwing deep validation: file existence, class-map completeness,
// parameter ranges. Empty result means valid.
std::vector<std::string> validate_manifest(const std::filesystem::path& path);
std::vector<std::string> validate_manifest(const SceneManifest& manifest);

}  // namespace roadaudit

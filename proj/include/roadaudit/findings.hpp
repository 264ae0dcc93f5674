#pragma once

#include <map>
#include <optional>
#include <string>

namespace roadaudit {

// The five upstream road-damage super-categories, passed through from the
// detector, plus the conditions this pipeline derives itself.
enum class RoadDamageKind {
  alligator,
  transverse,
  longitudinal,
  missing_marking,
  pothole,
};

enum class FindingKind {
  road_damage,
  marking_damage,
  sign_damaged,
  sign_skewed,
  barrier_unsafe,
};

const char* to_string(FindingKind kind);
const char* to_string(RoadDamageKind kind);

struct Finding {
  int frame_id = 0;
  FindingKind kind = FindingKind::road_damage;
  std::optional<RoadDamageKind> subkind;  // road_damage only
  std::optional<double> extent;           // affected area, square pixels
  std::optional<double> score;            // upstream detector confidence
  std::map<std::string, double> detail;   // solidity, skew_deg, similarity, ...
  std::map<std::string, std::string> detail_text;  // e.g. barrier side
};

struct GeoFinding {
  Finding finding;
  double lat = 0.0;
  double lon = 0.0;
};

}  // namespace roadaudit

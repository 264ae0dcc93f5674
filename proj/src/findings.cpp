#include "roadaudit/findings.hpp"

namespace roadaudit {

const char* to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::road_damage: return "road_damage";
    case FindingKind::marking_damage: return "marking_damage";
    case FindingKind::sign_damaged: return "sign_damaged";
    case FindingKind::sign_skewed: return "sign_skewed";
    case FindingKind::barrier_unsafe: return "barrier_unsafe";
  }
  return "unknown";
}

const char* to_string(RoadDamageKind kind) {
  switch (kind) {
    case RoadDamageKind::alligator: return "alligator";
    case RoadDamageKind::transverse: return "transverse";
    case RoadDamageKind::longitudinal: return "longitudinal";
    case RoadDamageKind::missing_marking: return "missing_marking";
    case RoadDamageKind::pothole: return "pothole";
  }
  return "unknown";
}

}  // namespace roadaudit

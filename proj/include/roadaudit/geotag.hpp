#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "roadaudit/core.hpp"
#include "roadaudit/findings.hpp"

namespace roadaudit {

struct GpsFix {
  double t = 0.0;    // seconds, video-relative
  double lat = 0.0;  // degrees WGS84
  double lon = 0.0;
};

struct GpsTrack {
  std::vector<GpsFix> fixes;  // strictly increasing t
};

struct FrameClock {
  double fps = 1.0;
  double t0 = 0.0;  // timestamp of frame 0
};

// CSV with header "t,lat,lon". Rejects unsorted timestamps rather than
// silently sorting. Throws Errc::empty_track / non_monotone_timestamps /
// out_of_range_coordinate / malformed_row.
GpsTrack parse_track(std::string_view text);

// Piecewise-linear in lat/lon; clamps outside the track instead of
// extrapolating. Returns (lat, lon).
Eigen::Vector2d interpolate(const GpsTrack& track, double t);

// Attaches interpolate(t0 + frame_id / fps) to each finding, preserving
// count and order.
std::vector<GeoFinding> geolocate(const std::vector<Finding>& findings,
                                  const GpsTrack& track,
                                  const FrameClock& clock);

}  // namespace roadaudit

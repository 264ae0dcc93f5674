#include "roadaudit/geotag.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace roadaudit {

namespace {

double parse_field(std::string_view field, int line_no) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    fail(Errc::malformed_row,
         "track line " + std::to_string(line_no) + ": bad number '" +
             std::string(field) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

GpsTrack parse_track(std::string_view text) {
  GpsTrack track;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    if (!saw_header) {
      if (line != "t,lat,lon")
        fail(Errc::malformed_row, "track must start with header t,lat,lon");
      saw_header = true;
      continue;
    }
    std::array<std::string_view, 3> fields;
    std::size_t start = 0;
    int count = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (count >= 3)
          fail(Errc::malformed_row,
               "track line " + std::to_string(line_no) + ": too many fields");
        fields[count++] = trim(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (count != 3)
      fail(Errc::malformed_row,
           "track line " + std::to_string(line_no) + ": expected t,lat,lon");

    GpsFix fix;
    fix.t = parse_field(fields[0], line_no);
    fix.lat = parse_field(fields[1], line_no);
    fix.lon = parse_field(fields[2], line_no);
    if (fix.lat < -90.0 || fix.lat > 90.0 || fix.lon < -180.0 || fix.lon > 180.0)
      fail(Errc::out_of_range_coordinate,
           "track line " + std::to_string(line_no) + ": coordinate out of range");
    if (!track.fixes.empty() && fix.t <= track.fixes.back().t)
      fail(Errc::non_monotone_timestamps,
           "track line " + std::to_string(line_no) +
               ": timestamps must strictly increase");
    track.fixes.push_back(fix);
    if (pos > text.size()) break;
  }
  if (track.fixes.empty()) fail(Errc::empty_track, "track has no fixes");
  return track;
}

Eigen::Vector2d interpolate(const GpsTrack& track, double t) {
  const auto& fx = track.fixes;
  if (t <= fx.front().t) return {fx.front().lat, fx.front().lon};
  if (t >= fx.back().t) return {fx.back().lat, fx.back().lon};
  const auto it = std::upper_bound(
      fx.begin(), fx.end(), t,
      [](double value, const GpsFix& f) { return value < f.t; });
  const GpsFix& b = *it;
  const GpsFix& a = *(it - 1);
  const double u = (t - a.t) / (b.t - a.t);
  return {a.lat + u * (b.lat - a.lat), a.lon + u * (b.lon - a.lon)};
}

std::vector<GeoFinding> geolocate(const std::vector<Finding>& findings,
                                  const GpsTrack& track,
                                  const FrameClock& clock) {
  if (clock.fps <= 0.0) fail(Errc::bad_param, "fps must be positive");
  std::vector<GeoFinding> out;
  out.reserve(findings.size());
  for (const Finding& f : findings) {
    const double t = clock.t0 + static_cast<double>(f.frame_id) / clock.fps;
    const Eigen::Vector2d ll = interpolate(track, t);
    out.push_back({f, ll.x(), ll.y()});
  }
  return out;
}

}  // namespace roadaudit

#include "roadaudit/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace roadaudit {

namespace {

using nlohmann::json;

std::set<int> ids_of(const json& value, const std::string& name) {
  std::set<int> ids;
  if (value.is_number_integer()) {
    ids.insert(value.get<int>());
  } else if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number_integer())
        fail(Errc::manifest_invalid, "class_map." + name + ": ids must be integers");
      ids.insert(v.get<int>());
    }
  } else {
    fail(Errc::manifest_invalid,
         "class_map." + name + ": expected an id or an array of ids");
  }
  return ids;
}

SlicParams parse_slic(const json& j) {
  SlicParams p;
  p.k = j.value("k", p.k);
  p.compactness = j.value("compactness", p.compactness);
  p.iterations = j.value("iterations", p.iterations);
  p.min_region = j.value("min_region", p.min_region);
  return p;
}

const std::map<std::string, RoadDamageKind> kRoadDamageNames = {
    {"alligator", RoadDamageKind::alligator},
    {"transverse", RoadDamageKind::transverse},
    {"longitudinal", RoadDamageKind::longitudinal},
    {"missing_marking", RoadDamageKind::missing_marking},
    {"pothole", RoadDamageKind::pothole},
};

}  // namespace

SceneManifest parse_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::manifest_invalid, "cannot open manifest " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    fail(Errc::manifest_invalid, "manifest is not a JSON object");

  SceneManifest m;
  m.base_dir = path.has_parent_path() ? path.parent_path() : ".";

  try {
    if (!doc.contains("frames") || !doc["frames"].is_array())
      fail(Errc::manifest_invalid, "manifest needs a frames array");
    for (const auto& jf : doc["frames"]) {
      FrameEntry fe;
      fe.frame_id = jf.at("frame_id").get<int>();
      fe.image_path = jf.at("image_path").get<std::string>();
      fe.mask_path = jf.at("mask_path").get<std::string>();
      if (jf.contains("detections_path"))
        fe.detections_path = jf["detections_path"].get<std::string>();
      m.frames.push_back(std::move(fe));
    }

    if (!doc.contains("class_map") || !doc["class_map"].is_object())
      fail(Errc::manifest_invalid, "manifest needs a class_map object");
    for (const auto& [name, value] : doc["class_map"].items())
      m.class_map[name] = ids_of(value, name);

    if (doc.contains("track_path"))
      m.track_path = doc["track_path"].get<std::string>();
    if (doc.contains("reference_library"))
      m.reference_library = doc["reference_library"].get<std::string>();

    if (doc.contains("clock")) {
      m.clock.fps = doc["clock"].value("fps", m.clock.fps);
      m.clock.t0 = doc["clock"].value("t0", m.clock.t0);
    }

    const json params = doc.value("params", json::object());
    if (params.contains("marking")) {
      const json& jm = params["marking"];
      m.marking.threshold_window = jm.value("threshold_window", m.marking.threshold_window);
      m.marking.threshold_offset = jm.value("threshold_offset", m.marking.threshold_offset);
      m.marking.density_threshold = jm.value("density_threshold", m.marking.density_threshold);
      m.marking.roi_pad = jm.value("roi_pad", m.marking.roi_pad);
      if (jm.contains("slic")) m.marking.slic = parse_slic(jm["slic"]);
    }
    if (params.contains("barrier")) {
      const json& jb = params["barrier"];
      m.barrier.right_threshold = jb.value("right_threshold", m.barrier.right_threshold);
      m.barrier.left_threshold = jb.value("left_threshold", m.barrier.left_threshold);
      m.barrier.min_area = jb.value("min_area", m.barrier.min_area);
    }
    if (params.contains("sign")) {
      const json& js = params["sign"];
      m.sign.sim_threshold = js.value("sim_threshold", m.sign.sim_threshold);
      m.sign.skew_threshold_deg =
          js.value("skew_threshold_deg", m.sign.skew_threshold_deg);
    }
    m.extent_from_box = params.value("extent_from_box", true);
  } catch (const json::exception& e) {
    fail(Errc::manifest_invalid, std::string("manifest: ") + e.what());
  }

  // Resolve the class roles the analyzers need.
  if (auto it = m.class_map.find("marking"); it != m.class_map.end())
    m.marking.marking_classes = it->second;
  if (auto it = m.class_map.find("barrier"); it != m.class_map.end())
    m.barrier.barrier_classes = it->second;
  if (auto it = m.class_map.find("sign"); it != m.class_map.end())
    m.sign_classes = it->second;
  if (auto it = m.class_map.find("pole");
      it != m.class_map.end() && !it->second.empty())
    m.pole_class = *it->second.begin();
  for (const auto& [name, kind] : kRoadDamageNames)
    if (auto it = m.class_map.find(name); it != m.class_map.end())
      for (int id : it->second) m.road_damage_classes[id] = kind;

  return m;
}

std::vector<std::string> validate_manifest(const SceneManifest& m) {
  std::vector<std::string> problems;
  auto check_file = [&](const std::filesystem::path& p, const std::string& what) {
    if (!std::filesystem::exists(m.resolve(p)))
      problems.push_back(what + " missing: " + m.resolve(p).string());
  };

  std::set<int> seen_ids;
  for (const FrameEntry& f : m.frames) {
    if (!seen_ids.insert(f.frame_id).second)
      problems.push_back("duplicate frame_id " + std::to_string(f.frame_id));
    check_file(f.image_path, "image");
    check_file(f.mask_path, "mask");
    if (f.detections_path) check_file(*f.detections_path, "detections");
  }

  for (const char* role : {"marking", "pole", "sign", "barrier"})
    if (!m.class_map.count(role))
      problems.push_back(std::string("class_map lacks '") + role + "' entry");

  if (m.track_path) check_file(*m.track_path, "track");
  if (m.reference_library &&
      !std::filesystem::is_directory(m.resolve(*m.reference_library)))
    problems.push_back("reference_library is not a directory: " +
                       m.resolve(*m.reference_library).string());

  if (m.clock.fps <= 0.0) problems.push_back("clock.fps must be positive");
  if (m.marking.density_threshold < 0.0 || m.marking.density_threshold > 1.0)
    problems.push_back("marking.density_threshold must be in [0, 1]");
  if (m.marking.threshold_window <= 0 || m.marking.threshold_window % 2 == 0)
    problems.push_back("marking.threshold_window must be odd and positive");
  if (m.marking.slic.k < 0)
    problems.push_back("marking.slic.k must be >= 0 (0 = auto)");
  if (m.marking.slic.compactness <= 0.0)
    problems.push_back("marking.slic.compactness must be positive");
  if (m.marking.slic.iterations < 1)
    problems.push_back("marking.slic.iterations must be >= 1");
  for (auto [value, name] :
       {std::pair{m.barrier.right_threshold, "barrier.right_threshold"},
        std::pair{m.barrier.left_threshold, "barrier.left_threshold"}})
    if (value <= 0.0 || value > 1.0)
      problems.push_back(std::string(name) + " must be in (0, 1]");
  if (m.barrier.min_area < 0.0)
    problems.push_back("barrier.min_area must be >= 0");
  if (m.sign.sim_threshold < -1.0 || m.sign.sim_threshold > 1.0)
    problems.push_back("sign.sim_threshold must be in [-1, 1]");
  if (m.sign.skew_threshold_deg < 0.0 || m.sign.skew_threshold_deg >= 90.0)
    problems.push_back("sign.skew_threshold_deg must be in [0, 90)");

  return problems;
}

std::vector<std::string> validate_manifest(const std::filesystem::path& path) {
  try {
    return validate_manifest(parse_manifest(path));
  } catch (const Error& e) {
    return {e.what()};
  }
}

}  // namespace roadaudit

#include "lfcap/service/protocol.hpp"

#include <cmath>

#include "lfcap/errors.hpp"
#include "lfcap/scene/formats.hpp"

namespace lfcap::service {

using nlohmann::json;

namespace {

std::vector<double> numbers(const json& j, const char* key, std::size_t count) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array() || j.at(key).size() != count) {
    throw ArgumentError(std::string("pose: '") + key + "' must be an array of " + std::to_string(count) + " numbers");
  }
  std::vector<double> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) throw ArgumentError(std::string("pose: '") + key + "' must contain numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ArgumentError(std::string("pose: '") + key + "' must be finite");
    out.push_back(x);
  }
  return out;
}

template <typename T>
void override_number(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ArgumentError(std::string("'") + key + "' must be a number");
  out = j.at(key).get<T>();
}

}  // namespace

const char* mode_wire_name(mpi::OverlayMode mode) {
  switch (mode) {
    case mpi::OverlayMode::raw:
      return "RAW";
    case mpi::OverlayMode::black_bg:
      return "BLACK_BG";
    case mpi::OverlayMode::error_on_video:
      return "ERROR_ON_VIDEO";
    case mpi::OverlayMode::error_on_mpi:
      return "ERROR_ON_MPI";
  }
  return "?";
}

mpi::OverlayMode parse_wire_mode(const std::string& name) {
  for (auto m : {mpi::OverlayMode::raw, mpi::OverlayMode::black_bg, mpi::OverlayMode::error_on_video,
                 mpi::OverlayMode::error_on_mpi}) {
    if (name == mode_wire_name(m)) return m;
  }
  throw ArgumentError("unknown mode '" + name + "'");
}

CameraModel parse_pose(const json& j, const CameraModel& intrinsics) {
  if (!j.is_object()) throw ArgumentError("pose must be an object");
  const auto r = numbers(j, "rotation", 9);
  const auto c = numbers(j, "center", 3);
  Eigen::Matrix3d rot;
  rot << r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8];
  CameraModel cam = intrinsics.with_pose(rot, {c[0], c[1], c[2]});
  try {
    cam.validate();
  } catch (const InvariantError& e) {
    throw ArgumentError(std::string("pose: ") + e.what());
  }
  return cam;
}

json pose_json(const CameraModel& pose) { return scene::pose_to_json(pose); }

FrameRequest parse_frame_request(const json& j, const CameraModel& intrinsics) {
  if (!j.is_object() || !j.contains("pose")) throw ArgumentError("frame request needs a 'pose'");
  FrameRequest req;
  req.pose = parse_pose(j.at("pose"), intrinsics);
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) throw ArgumentError("'mode' must be a string");
    req.mode = parse_wire_mode(j.at("mode").get<std::string>());
  }
  if (j.contains("t") && !j.at("t").is_null()) {
    if (!j.at("t").is_number()) throw ArgumentError("'t' must be a number");
    req.t = j.at("t").get<double>();
    if (!(*req.t > 0.0) || !std::isfinite(*req.t)) throw ArgumentError("'t' must be > 0");
  }
  return req;
}

FrameRequest parse_frame_request(const std::string& text, const CameraModel& intrinsics) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
  return parse_frame_request(j, intrinsics);
}

CreateRequest parse_create_request(const std::string& body, const SessionParams& defaults) {
  CreateRequest req;
  req.params = defaults;
  if (body.empty()) return req;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("session request must be an object");
  SessionParams& p = req.params;
  override_number(j, "layers", p.layers);
  override_number(j, "k", p.k);
  override_number(j, "t", p.t);
  override_number(j, "threshold", p.threshold);
  override_number(j, "jitter", p.jitter_sigma);
  override_number(j, "width", p.width);
  override_number(j, "height", p.height);
  if (j.contains("fov_deg")) {
    double deg = 0.0;
    override_number(j, "fov_deg", deg);
    p.fov_x = deg * M_PI / 180.0;
  }
  if (j.contains("scene")) {
    const json& s = j.at("scene");
    try {
      req.scene = s.is_string() ? scene::preset_scene(s.get<std::string>()) : scene::scene_from_json(s, ".");
    } catch (const Error& e) {
      throw ArgumentError(std::string("invalid scene: ") + e.what());
    }
  }
  p.validate();
  return req;
}

json frame_header(const FrameResult& frame, std::size_t frame_bytes) {
  json j = {{"error_rate", frame.error_rate}, {"capture_count", frame.capture_count}, {"frame_bytes", frame_bytes}};
  if (frame.no_mpi) j["no_mpi"] = true;
  return j;
}

json capture_json(const CaptureResult& result) {
  return {{"capture_count", result.capture_count},
          {"error_rate_before", result.error_rate_before},
          {"scale", result.scale},
          {"state", state_name(result.state)}};
}

}  // namespace lfcap::service

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lfcap/camera.hpp"
#include "lfcap/mpi/types.hpp"
#include "lfcap/scene/scene.hpp"
#include "lfcap/service/session.hpp"

namespace lfcap::service {

/// {pose: {rotation: [9, row-major], center: [3]}, mode, t?}
struct FrameRequest {
  CameraModel pose;
  mpi::OverlayMode mode = mpi::OverlayMode::error_on_mpi;
  std::optional<double> t;
};

/// Wire names: "RAW", "BLACK_BG", "ERROR_ON_VIDEO", "ERROR_ON_MPI".
const char* mode_wire_name(mpi::OverlayMode mode);
mpi::OverlayMode parse_wire_mode(const std::string& name);

/// Malformed input throws ArgumentError.
CameraModel parse_pose(const nlohmann::json& j, const CameraModel& intrinsics);
nlohmann::json pose_json(const CameraModel& pose);
FrameRequest parse_frame_request(const nlohmann::json& j, const CameraModel& intrinsics);
FrameRequest parse_frame_request(const std::string& text, const CameraModel& intrinsics);

/// POST /sessions body: optional "scene" (scene object or preset name) and
/// parameter overrides (layers, k, t, threshold, jitter, width, height,
/// fov_deg) applied over `defaults`. Without a scene the server default is
/// used.
struct CreateRequest {
  std::optional<scene::SceneSpec> scene;
  SessionParams params;
};
CreateRequest parse_create_request(const std::string& body, const SessionParams& defaults = {});

/// {error_rate, capture_count, frame_bytes}, plus no_mpi when set.
nlohmann::json frame_header(const FrameResult& frame, std::size_t frame_bytes);

nlohmann::json capture_json(const CaptureResult& result);

}  // namespace lfcap::service

#pragma once

// On-disk formats.
//
// MPI directory:
//   manifest.json        width, height, f, cx, cy, rotation (9, row-major),
//                        translation (camera center, 3), scale, depths
//   layer_<i>.color.png  8-bit RGB, i = 0 is the nearest plane
//   layer_<i>.sigma.f32  float32 little-endian, row-major width*height
//
// Frame directory:
//   frame.json           camera (same keys as above) and depth units
//   color.png            8-bit RGB
//   depth.png            16-bit gray, millimeters, 0 = no measurement
//
// Scene and trajectory files are single JSON documents.

#include <filesystem>
#include <nlohmann/json.hpp>

#include "lfcap/camera.hpp"
#include "lfcap/frame.hpp"
#include "lfcap/mpi/types.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::scene {

nlohmann::json camera_to_json(const CameraModel& cam);
/// Throws IoError on missing/malformed keys and InvariantError when the
/// camera itself is invalid.
CameraModel camera_from_json(const nlohmann::json& j);

/// Pose only: {"rotation": [9 row-major], "center": [3]}.
nlohmann::json pose_to_json(const CameraModel& cam);
CameraModel pose_from_json(const nlohmann::json& j, const CameraModel& intrinsics);

void save_mpi(const std::filesystem::path& dir, const mpi::MpiVolume& volume);
mpi::MpiVolume load_mpi(const std::filesystem::path& dir);

void save_frame(const std::filesystem::path& dir, const RgbdFrame& frame);
RgbdFrame load_frame(const std::filesystem::path& dir);

nlohmann::json trajectory_to_json(const Trajectory& traj);
Trajectory trajectory_from_json(const nlohmann::json& j);
void save_trajectory(const std::filesystem::path& file, const Trajectory& traj);
Trajectory load_trajectory(const std::filesystem::path& file);

/// Image textures are resolved relative to `base_dir`.
nlohmann::json scene_to_json(const SceneSpec& scene);
SceneSpec scene_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
void save_scene(const std::filesystem::path& file, const SceneSpec& scene);
SceneSpec load_scene(const std::filesystem::path& file);

nlohmann::json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const nlohmann::json& j);

}  // namespace lfcap::scene

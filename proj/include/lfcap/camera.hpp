#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <optional>

namespace lfcap {

/// Pinhole camera with a rigid pose.
///
/// Pixel (x, y) has its center at image coordinates (x, y); the camera looks
/// down its +z axis with +x right and +y down. `rotation` maps camera-frame
/// vectors into the world frame and `center` is the camera center in world
/// coordinates (meters), so a world point X sits at R^T (X - C) in the
/// camera frame.
struct CameraModel {
  double f = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 1;
  int height = 1;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d center = Eigen::Vector3d::Zero();

  /// Principal point at the image center and identity pose.
  static CameraModel centered(int width, int height, double f);

  /// Same intrinsics with a horizontal field of view `fov_x` (radians).
  static CameraModel from_fov(int width, int height, double fov_x);

  /// Throws InvariantError when f, resolution or rotation are invalid.
  void validate() const;

  /// Horizontal field of view, 2 atan(width / 2f).
  double fov_x() const;

  CameraModel with_pose(const Eigen::Matrix3d& r, const Eigen::Vector3d& c) const;
  CameraModel with_center(const Eigen::Vector3d& c) const;

  /// World-space direction through pixel (u, v) whose camera-frame z
  /// component is 1. Ray parameter t along it equals camera depth.
  Eigen::Vector3d ray(double u, double v) const;

  Eigen::Vector3d to_camera(const Eigen::Vector3d& world) const;

  /// Projects a world point; empty when the point is not in front of the
  /// camera (camera-frame z <= 0).
  std::optional<Eigen::Vector2d> project(const Eigen::Vector3d& world) const;

  Eigen::Vector3d optical_axis() const { return rotation.col(2); }

  bool same_intrinsics(const CameraModel& other) const;
};

bool operator==(const CameraModel& a, const CameraModel& b);

/// Rotation that points the camera's +z axis along `forward` with image +y
/// as close to `down` as possible.
Eigen::Matrix3d look_rotation(const Eigen::Vector3d& forward, const Eigen::Vector3d& down = Eigen::Vector3d::UnitY());

}  // namespace lfcap

#include "lfcap/camera.hpp"

#include <Eigen/Geometry>
#include <cmath>

#include "lfcap/errors.hpp"

namespace lfcap {

namespace {
constexpr double kRotationTolerance = 1e-9;
}

CameraModel CameraModel::centered(int width, int height, double f) {
  CameraModel cam;
  cam.f = f;
  cam.width = width;
  cam.height = height;
  cam.cx = 0.5 * (width - 1);
  cam.cy = 0.5 * (height - 1);
  return cam;
}

CameraModel CameraModel::from_fov(int width, int height, double fov_x) {
  return centered(width, height, 0.5 * width / std::tan(0.5 * fov_x));
}

void CameraModel::validate() const {
  if (!(f > 0.0) || !std::isfinite(f)) throw InvariantError("camera: focal length must be > 0");
  if (width <= 0 || height <= 0) throw InvariantError("camera: resolution must be positive");
  if (!std::isfinite(cx) || !std::isfinite(cy) || !center.allFinite() || !rotation.allFinite()) {
    throw InvariantError("camera: non-finite parameter");
  }
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > kRotationTolerance) {
    throw InvariantError("camera: rotation is not orthonormal");
  }
  if (std::abs(rotation.determinant() - 1.0) > kRotationTolerance) {
    throw InvariantError("camera: rotation determinant must be +1");
  }
}

double CameraModel::fov_x() const { return 2.0 * std::atan(width / (2.0 * f)); }

CameraModel CameraModel::with_pose(const Eigen::Matrix3d& r, const Eigen::Vector3d& c) const {
  CameraModel out = *this;
  out.rotation = r;
  out.center = c;
  return out;
}

CameraModel CameraModel::with_center(const Eigen::Vector3d& c) const {
  CameraModel out = *this;
  out.center = c;
  return out;
}

Eigen::Vector3d CameraModel::ray(double u, double v) const {
  return rotation * Eigen::Vector3d((u - cx) / f, (v - cy) / f, 1.0);
}

Eigen::Vector3d CameraModel::to_camera(const Eigen::Vector3d& world) const {
  return rotation.transpose() * (world - center);
}

std::optional<Eigen::Vector2d> CameraModel::project(const Eigen::Vector3d& world) const {
  const Eigen::Vector3d p = to_camera(world);
  if (p.z() <= 0.0) return std::nullopt;
  return Eigen::Vector2d(f * p.x() / p.z() + cx, f * p.y() / p.z() + cy);
}

bool CameraModel::same_intrinsics(const CameraModel& other) const {
  return f == other.f && cx == other.cx && cy == other.cy && width == other.width && height == other.height;
}

bool operator==(const CameraModel& a, const CameraModel& b) {
  return a.same_intrinsics(b) && a.rotation == b.rotation && a.center == b.center;
}

Eigen::Matrix3d look_rotation(const Eigen::Vector3d& forward, const Eigen::Vector3d& down) {
  const Eigen::Vector3d z = forward.normalized();
  Eigen::Vector3d x = down.cross(z);
  if (x.norm() < 1e-12) x = Eigen::Vector3d::UnitZ().cross(z);
  x.normalize();
  const Eigen::Vector3d y = z.cross(x);
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = y;
  r.col(2) = z;
  return r;
}

}  // namespace lfcap

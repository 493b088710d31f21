#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfcap/camera.hpp"
#include "lfcap/frame.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::scene {

using mpi::Rgb;

/// Procedural surface texture addressed by metric (u, v) coordinates on the
/// primitive, origin at its first corner.
struct Texture {
  enum class Kind { solid, checker, gradient, image };

  Kind kind = Kind::solid;
  Rgb a{0.5F, 0.5F, 0.5F};
  Rgb b{0.5F, 0.5F, 0.5F};
  /// Checker cell size in meters.
  double cell = 0.1;
  /// Gradient direction: 0 = u, 1 = v.
  int axis = 0;
  /// Image textures stretch over the whole face.
  std::string image_path;
  std::shared_ptr<const Image> image;

  static Texture solid(Rgb c);
  static Texture checker(Rgb a, Rgb b, double cell);
  static Texture gradient(Rgb from, Rgb to, int axis);

  /// Color at metric coordinates (u, v) on a face of size (w, h).
  Rgb sample(double u, double v, double w, double h) const;
};

/// Textured rectangle (center, two orthonormal in-plane axes, metric size)
/// or axis-aligned box.
struct Primitive {
  enum class Kind { rect, box };

  Kind kind = Kind::rect;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis_u = Eigen::Vector3d::UnitX();
  Eigen::Vector3d axis_v = Eigen::Vector3d::UnitY();
  Eigen::Vector2d size{1.0, 1.0};
  Eigen::Vector3d box_min = Eigen::Vector3d::Zero();
  Eigen::Vector3d box_max = Eigen::Vector3d::Ones();
  Texture texture;

  static Primitive rect(const Eigen::Vector3d& center, const Eigen::Vector3d& axis_u, const Eigen::Vector3d& axis_v,
                        double width, double height, Texture texture);
  static Primitive box(const Eigen::Vector3d& min, const Eigen::Vector3d& max, Texture texture);
};

struct Hit {
  double t;  // ray parameter; equals camera depth for camera rays
  Rgb color;
};

/// Nearest intersection with t > 0 of origin + t * dir.
std::optional<Hit> intersect(const Primitive& prim, const Eigen::Vector3d& origin, const Eigen::Vector3d& dir);

struct SceneSpec {
  std::vector<Primitive> primitives;
  Rgb background{0.0F, 0.0F, 0.0F};
  double z_min_hint = 0.5;
  double z_max_hint = 3.0;

  /// Throws InvariantError when there are no primitives or a size is not
  /// positive.
  void validate() const;
};

/// Ray-casts every pixel center. Misses take the background color and a
/// depth of mpi::kDepthSentinel.
RgbdFrame render_scene(const SceneSpec& scene, const CameraModel& camera);

/// Ordered camera poses sharing one set of intrinsics.
struct Trajectory {
  std::vector<CameraModel> poses;
  /// Distance between consecutive centers (poses.size() - 1 entries).
  std::vector<double> spacing;

  void validate() const;
  std::size_t size() const { return poses.size(); }

  /// Cumulative center distance from pose 0 to each pose.
  std::vector<double> arc_length() const;

  /// Recomputes spacing from the pose centers.
  void update_spacing();

  /// n poses from `start` moving its center linearly to `end_center` with
  /// fixed orientation.
  static Trajectory linear(const CameraModel& start, const Eigen::Vector3d& end_center, std::size_t n);
};

/// Built-in scenes: "plane" (one fronto-parallel plane at 2 m), "office"
/// (0.5 m to 3.0 m, near clutter on the left that leaves the view when
/// moving right), "shelf" and "pillars" (other multi-depth layouts).
SceneSpec preset_scene(const std::string& name);
std::vector<std::string> preset_names();

/// Camera looking down +z from the origin, `fov_x` radians wide.
CameraModel default_camera(int width, int height, double fov_x);

}  // namespace lfcap::scene

#pragma once

#include <Eigen/Core>

#include "lfcap/camera.hpp"
#include "lfcap/image.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// Layer resampled into a target view.
struct WarpedLayer {
  Image color;    // 3 channels at target resolution
  Image density;  // 1 channel; 0 where the plane is not visible
};

/// Homography taking target pixels (u, v, 1) to source pixels for the plane
/// at `depth` along the source optical axis. The third homogeneous
/// coordinate of the result is depth * (n . d) where d is the target ray.
Eigen::Matrix3d plane_homography(const CameraModel& source, const CameraModel& target, double depth);

/// Per-pixel geometry of a family of source-fronto-parallel planes seen from
/// a target camera. For target pixel p with ray d (camera z = 1):
///   target depth of plane z:   t(p) = (z - n.(C_t - C_s)) / (n . d)
///   along-ray distance:        t(p) * |d|
class PlaneRayGeometry {
 public:
  PlaneRayGeometry(const CameraModel& source, const CameraModel& target);

  /// n . d at pixel (u, v).
  double facing(double u, double v) const { return facing_.dot(Eigen::Vector3d(u, v, 1.0)); }

  /// |d| at pixel (u, v).
  double ray_length(double u, double v) const;

  /// Target depth of the plane at source depth z; <= 0 or non-finite means
  /// the plane is behind the target camera at that pixel.
  double target_depth(double z, double u, double v) const { return (z - offset_) / facing(u, v); }

  /// Along-ray distance between planes at source depths z0 < z1.
  double gap(double z0, double z1, double u, double v) const { return (z1 - z0) * ray_length(u, v) / facing(u, v); }

 private:
  const CameraModel* target_;
  Eigen::Vector3d facing_;
  double offset_;
};

/// Resamples a fronto-parallel layer (depth along the source optical axis)
/// into the target camera through the plane-induced homography with bilinear
/// sampling. Samples outside the source image, and pixels where the plane is
/// behind the target camera, are transparent (density 0, color 0).
WarpedLayer warp_layer(const MpiLayer& layer, const CameraModel& source, const CameraModel& target);

}  // namespace lfcap::mpi

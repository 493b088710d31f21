#include "lfcap/mpi/warp.hpp"

#include <algorithm>
#include <cmath>

namespace lfcap::mpi {

namespace {

Eigen::Matrix3d intrinsics(const CameraModel& cam) {
  Eigen::Matrix3d k;
  k << cam.f, 0.0, cam.cx, 0.0, cam.f, cam.cy, 0.0, 0.0, 1.0;
  return k;
}

Eigen::Matrix3d inverse_intrinsics(const CameraModel& cam) {
  Eigen::Matrix3d k;
  k << 1.0 / cam.f, 0.0, -cam.cx / cam.f, 0.0, 1.0 / cam.f, -cam.cy / cam.f, 0.0, 0.0, 1.0;
  return k;
}

}  // namespace

Eigen::Matrix3d plane_homography(const CameraModel& source, const CameraModel& target, double depth) {
  const Eigen::Vector3d n = source.optical_axis();
  const Eigen::Vector3d baseline = target.center - source.center;
  const double num = depth - n.dot(baseline);
  const Eigen::Matrix3d rs_t = source.rotation.transpose();
  const Eigen::Matrix3d m = rs_t * baseline * n.transpose() + num * rs_t;
  return intrinsics(source) * m * target.rotation * inverse_intrinsics(target);
}

PlaneRayGeometry::PlaneRayGeometry(const CameraModel& source, const CameraModel& target)
    : target_(&target) {
  const Eigen::Vector3d n = source.optical_axis();
  facing_ = (n.transpose() * target.rotation * inverse_intrinsics(target)).transpose();
  offset_ = n.dot(target.center - source.center);
}

double PlaneRayGeometry::ray_length(double u, double v) const {
  const double x = (u - target_->cx) / target_->f;
  const double y = (v - target_->cy) / target_->f;
  return std::sqrt(x * x + y * y + 1.0);
}

WarpedLayer warp_layer(const MpiLayer& layer, const CameraModel& source, const CameraModel& target) {
  const int tw = target.width;
  const int th = target.height;
  WarpedLayer out{Image(tw, th, 3), Image(tw, th, 1)};

  const Eigen::Matrix3d h = plane_homography(source, target, layer.depth());
  const PlaneRayGeometry geom(source, target);

  const int sw = layer.width();
  const int sh = layer.height();
  const Image& color = layer.color();
  const Image& density = layer.density();
  const std::span<const float> src_r = color.plane(0);
  const std::span<const float> src_g = color.plane(1);
  const std::span<const float> src_b = color.plane(2);
  const std::span<const float> src_s = density.plane(0);
  const std::span<float> dst_r = out.color.plane(0);
  const std::span<float> dst_g = out.color.plane(1);
  const std::span<float> dst_b = out.color.plane(2);
  const std::span<float> dst_s = out.density.plane(0);

  const double max_u = sw - 0.5;
  const double max_v = sh - 0.5;

  for (int y = 0; y < th; ++y) {
    for (int x = 0; x < tw; ++x) {
      const double depth_t = geom.target_depth(layer.depth(), x, y);
      if (!(depth_t > 0.0) || !std::isfinite(depth_t)) continue;

      const double hx = h(0, 0) * x + h(0, 1) * y + h(0, 2);
      const double hy = h(1, 0) * x + h(1, 1) * y + h(1, 2);
      const double hw = h(2, 0) * x + h(2, 1) * y + h(2, 2);
      const double u = hx / hw;
      const double v = hy / hw;
      if (!(u >= -0.5 && u <= max_u && v >= -0.5 && v <= max_v)) continue;

      const double fx0 = std::floor(u);
      const double fy0 = std::floor(v);
      const double ax = u - fx0;
      const double ay = v - fy0;
      const int x0 = std::clamp(static_cast<int>(fx0), 0, sw - 1);
      const int y0 = std::clamp(static_cast<int>(fy0), 0, sh - 1);
      const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, sw - 1);
      const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, sh - 1);

      const std::size_t i00 = static_cast<std::size_t>(y0) * sw + x0;
      const std::size_t i01 = static_cast<std::size_t>(y0) * sw + x1;
      const std::size_t i10 = static_cast<std::size_t>(y1) * sw + x0;
      const std::size_t i11 = static_cast<std::size_t>(y1) * sw + x1;
      const double w00 = (1.0 - ax) * (1.0 - ay);
      const double w01 = ax * (1.0 - ay);
      const double w10 = (1.0 - ax) * ay;
      const double w11 = ax * ay;

      const auto sample = [&](std::span<const float> p) {
        return static_cast<float>(w00 * p[i00] + w01 * p[i01] + w10 * p[i10] + w11 * p[i11]);
      };

      const std::size_t o = static_cast<std::size_t>(y) * tw + x;
      dst_r[o] = sample(src_r);
      dst_g[o] = sample(src_g);
      dst_b[o] = sample(src_b);
      dst_s[o] = sample(src_s);
    }
  }
  return out;
}

}  // namespace lfcap::mpi

#include "lfcap/scene/binning.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/render.hpp"
#include "lfcap/mpi/scale.hpp"

namespace lfcap::scene {

namespace {

constexpr double kSnap = 1e-9;

void check_range(int layers, double z_near, double z_far) {
  if (layers < 2) throw ArgumentError("mpi_from_rgbd: need at least 2 layers");
  if (!(z_near > 0.0 && z_far > z_near) || !std::isfinite(z_far)) {
    throw ArgumentError("mpi_from_rgbd: require 0 < z_near < z_far");
  }
}

}  // namespace

std::vector<double> disparity_layer_depths(int layers, double z_near, double z_far) {
  check_range(layers, z_near, z_far);
  const double d_near = 1.0 / z_near;
  const double d_far = 1.0 / z_far;
  std::vector<double> depths(layers);
  for (int i = 0; i < layers; ++i) {
    const double t = static_cast<double>(i) / (layers - 1);
    depths[i] = 1.0 / (d_near + t * (d_far - d_near));
  }
  depths.front() = z_near;
  depths.back() = z_far;
  return depths;
}

DisparitySplit split_disparity(double depth, int layers, double z_near, double z_far) {
  const double d_near = 1.0 / z_near;
  const double d_far = 1.0 / z_far;
  const double step = (d_near - d_far) / (layers - 1);
  const double disp = 1.0 / std::clamp(depth, z_near, z_far);
  const double pos = std::clamp((d_near - disp) / step, 0.0, static_cast<double>(layers - 1));
  int front = static_cast<int>(std::floor(pos));
  double frac = pos - front;
  if (frac < kSnap) {
    frac = 0.0;
  } else if (frac > 1.0 - kSnap) {
    ++front;
    frac = 0.0;
  }
  if (front >= layers - 1) {
    front = layers - 1;
    frac = 0.0;
  }
  return {front, 1.0 - frac};
}

mpi::MpiVolume mpi_from_rgbd(const RgbdFrame& frame, int layers, double z_near, double z_far, BinningStats* stats) {
  check_range(layers, z_near, z_far);
  frame.validate();
  const CameraModel& cam = frame.camera;
  const int w = cam.width;
  const int h = cam.height;
  const std::vector<double> depths = disparity_layer_depths(layers, z_near, z_far);

  std::vector<Image> density(layers, Image(w, h, 1));
  BinningStats local;

  const auto sigma_for = [&](int layer, double opacity, double ray_len) {
    const double a = std::min(opacity, kMaxLayerOpacity);
    return static_cast<float>(-std::log1p(-a) / mpi::layer_interval(depths, layer, ray_len));
  };

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double d = frame.depth.at(0, x, y);
      if (!(d > mpi::kDepthSentinel)) {
        ++local.empty;
        continue;
      }
      if (d < z_near || d > z_far) ++local.clamped;
      const double ray_len = cam.ray(x, y).norm();
      const DisparitySplit split = split_disparity(d, layers, z_near, z_far);
      if (split.front_weight >= 1.0) {
        density[split.front].at(0, x, y) = sigma_for(split.front, 1.0, ray_len);
      } else {
        density[split.front].at(0, x, y) = sigma_for(split.front, split.front_weight, ray_len);
        density[split.front + 1].at(0, x, y) = sigma_for(split.front + 1, 1.0, ray_len);
      }
    }
  }

  const auto color = std::make_shared<const Image>(frame.rgb);
  std::vector<mpi::MpiLayer> out;
  out.reserve(layers);
  for (int i = 0; i < layers; ++i) {
    out.emplace_back(color, std::make_shared<const Image>(std::move(density[i])), depths[i]);
  }
  if (stats) *stats = local;
  return mpi::MpiVolume(std::move(out), cam, 1.0);
}

std::pair<double, double> default_depth_range(const SceneSpec& scene) {
  return {std::max(0.3, scene.z_min_hint), std::min(100.0, scene.z_max_hint)};
}

}  // namespace lfcap::scene

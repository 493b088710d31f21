#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lfcap/frame.hpp"
#include "lfcap/mpi/types.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::scene {

/// Largest opacity written into a layer.
inline constexpr double kMaxLayerOpacity = 1.0 - 1e-6;

/// `layers` plane depths uniform in disparity from z_near to z_far.
std::vector<double> disparity_layer_depths(int layers, double z_near, double z_far);

/// Position of a disparity between two adjacent planes.
struct DisparitySplit {
  int front;            // nearer plane
  double front_weight;  // in (0, 1]; the far plane receives 1 - front_weight
};

/// Splits `depth` (clamped into [z_near, z_far]) linearly in disparity
/// between its two neighbouring planes. Depths on a plane put all weight
/// on that plane.
DisparitySplit split_disparity(double depth, int layers, double z_near, double z_far);

struct BinningStats {
  std::size_t clamped = 0;
  std::size_t empty = 0;  // sentinel-depth pixels
};

/// Builds a depth-binned MPI from a single RGBD frame.
///
/// Each measured pixel lands on its two disparity-adjacent planes: the near
/// plane gets opacity w (its split weight) and the far plane opacity ~1, so
/// the composited contributions are w and 1 - w and the rendered disparity
/// interpolates the measured one. Opacity is stored as density
/// sigma = -ln(1 - a) / delta with delta the reference-view interval of
/// that plane. Every layer's color is the frame's color; empty pixels stay
/// transparent.
///
/// Throws ArgumentError unless layers >= 2 and 0 < z_near < z_far.
mpi::MpiVolume mpi_from_rgbd(const RgbdFrame& frame, int layers, double z_near, double z_far,
                             BinningStats* stats = nullptr);

/// z_near = max(0.3, scene min hint), z_far = min(100, scene max hint).
std::pair<double, double> default_depth_range(const SceneSpec& scene);

}  // namespace lfcap::scene

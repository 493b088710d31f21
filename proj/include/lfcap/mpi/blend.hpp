#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "lfcap/camera.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// The volumes closest to a target camera center.
struct NearestSet {
  std::vector<std::size_t> indices;  // ordered by distance, ties by index
  std::vector<double> distances;     // L2 distance per selected index
  double gamma = 0.0;                // largest selected distance
};

/// Picks min(k, centers.size()) entries by Euclidean distance between the
/// target center and each reference center. Throws EmptyInputError when
/// there are no centers and ArgumentError when k == 0.
NearestSet select_k_nearest(std::span<const Eigen::Vector3d> centers, const CameraModel& target, std::size_t k);
NearestSet select_k_nearest(std::span<const MpiVolume* const> volumes, const CameraModel& target, std::size_t k);

/// exp(-l_k / gamma) normalized to sum 1. gamma == 0 (coincident volumes)
/// gives equal weights.
std::vector<double> blend_weights(std::span<const double> distances, double gamma);

/// c = sum w a c_k / sum w a (0 where the denominator vanishes),
/// alpha = min(sum w a, 1). Disparity blends like color when every input
/// carries one. Throws EmptyInputError on no renders, DimensionError on
/// mismatched sizes, ArgumentError on a negative gamma.
RenderedView blend_renders(std::span<const RenderedView> renders, std::span<const double> distances, double gamma);

/// Renders the k nearest volumes at `target` and blends them.
struct NearestRender {
  RenderedView view;
  NearestSet nearest;
};
NearestRender render_nearest(std::span<const MpiVolume* const> volumes, const CameraModel& target, std::size_t k,
                             bool with_disparity = false);

}  // namespace lfcap::mpi

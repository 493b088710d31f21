#pragma once

#include "lfcap/camera.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// Renders an MPI at a target camera: every layer is warped through its
/// plane homography and composited front to back. The per-pixel interval
/// for layer i is the along-ray distance to plane i+1; the last layer
/// reuses the previous gap, and a single-layer volume uses its own depth.
///
/// The disparity channel composites 1/z_i with the color weights.
RenderedView render(const MpiVolume& mpi, const CameraModel& target, bool with_disparity = true);

/// Along-ray interval for layer `i` of `depths` in a view whose per-pixel
/// length factor |d| / |n . d| is `factor`.
double layer_interval(const std::vector<double>& depths, std::size_t i, double factor);

}  // namespace lfcap::mpi

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lfcap/image.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// Metric depth value marking pixels without a measurement.
inline constexpr float kDepthSentinel = 0.0F;

struct ScaleEstimate {
  double scale = 1.0;
  std::size_t used_pixels = 0;
  /// Pixels with a metric depth but a non-positive rendered disparity.
  std::size_t excluded_pixels = 0;
  /// Set when more than half of the measured pixels had to be excluded.
  std::optional<std::string> warning;
};

/// Scale between a metric depth map and an MPI's rendered disparity:
///   s = exp(mean(ln D_hat - ln(1/d)))
/// i.e. the geometric mean of D_hat * d over pixels with a valid metric
/// depth and positive D_hat. Throws ScaleError when no pixel qualifies and
/// DimensionError when the maps differ in size.
ScaleEstimate compute_scale(const Image& metric_depth, const Image& rendered_disparity);

/// Scales every plane about the reference camera center: z' = s z, so the
/// extents become z' w / f, z' h / f. Resolution and colors are unchanged
/// (color grids are shared); densities are divided by s so the volume
/// renders identically at the reference pose.
/// Throws ScaleError for s <= 0.
MpiVolume rescale_mpi(const MpiVolume& mpi, double s);

}  // namespace lfcap::mpi

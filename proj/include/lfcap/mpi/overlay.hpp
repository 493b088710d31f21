#pragma once

#include <cstdint>
#include <vector>

#include "lfcap/image.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// Composites the rendering over a flat background:
///   c' = alpha c_mpi + (1 - alpha) c_bg
Image overlay_black(const RenderedView& view, const Rgb& background = {0.0F, 0.0F, 0.0F});

struct ErrorMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;  // row-major, 1 where the pixel exceeds t
  std::size_t count = 0;
  /// count / (width * height); every viewport pixel is in the denominator.
  double rate = 0.0;
};

/// mask = sum over RGB of |c_mpi - c_vid| > t. Throws DimensionError on
/// differing sizes and ArgumentError for t <= 0.
ErrorMask error_mask(const Image& c_mpi, const Image& c_vid, double t);

/// Error color where the mask is set, the video frame elsewhere.
Image error_peak_video(const Image& c_mpi, const Image& c_vid, const OverlayConfig& config);

/// Error color where the mask is set, the rendering over the background
/// elsewhere. The video frame only decides the mask.
Image error_peak_mpi(const RenderedView& view, const Image& c_vid, const OverlayConfig& config);

/// Visualization selected by config.mode. RAW returns c_vid.
Image apply_overlay(const RenderedView& view, const Image& c_vid, const OverlayConfig& config);

}  // namespace lfcap::mpi

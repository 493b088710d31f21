#pragma once

#include "lfcap/camera.hpp"
#include "lfcap/image.hpp"

namespace lfcap {

/// One capture: color, metric depth (camera z, meters; 0 where the ray hit
/// nothing) and the camera that took it.
struct RgbdFrame {
  Image rgb;    // 3 channels in [0,1]
  Image depth;  // 1 channel
  CameraModel camera;

  /// Throws DimensionError / InvariantError when sizes disagree with the
  /// camera or a depth is negative or non-finite.
  void validate() const;
};

}  // namespace lfcap

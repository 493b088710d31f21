#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>

#include "lfcap/frame.hpp"
#include "lfcap/mpi/scale.hpp"
#include "lfcap/mpi/types.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::lab {

/// A registered view: the oracle frame, its metric MPI and the scale that
/// was applied to get there.
struct CapturedView {
  RgbdFrame frame;
  std::shared_ptr<const mpi::MpiVolume> volume;
  mpi::ScaleEstimate scale;
};

/// Extra field of view around a capture, as a fraction of the image size
/// on every side.
inline constexpr double kDefaultCaptureMargin = 0.15;

/// Same pose and focal length with `margin * size` more pixels on every
/// side. Pixel (x, y) of `camera` is pixel (x + pad_x, y + pad_y) here.
CameraModel padded_camera(const CameraModel& camera, double margin);

/// Full capture path: oracle RGBD over the padded view, depth-binned MPI,
/// rendered disparity at the reference pose, compute_scale against the
/// metric depth and rescale_mpi by the result. `frame` is the unpadded
/// view; the volume's reference is the padded camera.
CapturedView capture_view(const scene::SceneSpec& scene, const CameraModel& camera, int layers,
                          double margin = kDefaultCaptureMargin);

/// Lazily captured views of one trajectory, keyed by pose index.
/// Thread-safe.
class CaptureCache {
 public:
  CaptureCache(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, int layers,
               double margin = kDefaultCaptureMargin);

  std::shared_ptr<const CapturedView> get(std::size_t index);
  const scene::Trajectory& trajectory() const { return trajectory_; }
  int layers() const { return layers_; }

 private:
  const scene::SceneSpec& scene_;
  const scene::Trajectory& trajectory_;
  int layers_;
  double margin_;
  std::mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const CapturedView>> views_;
};

}  // namespace lfcap::lab

#include "lfcap/lab/capture.hpp"

#include <cmath>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/render.hpp"
#include "lfcap/scene/binning.hpp"

namespace lfcap::lab {

namespace {

int pad(double margin, int size) { return static_cast<int>(std::ceil(margin * size)); }

Image crop(const Image& src, int x0, int y0, int w, int h) {
  Image out(w, h, src.channels());
  for (int c = 0; c < src.channels(); ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(c, x, y) = src.at(c, x + x0, y + y0);
  return out;
}

}  // namespace

CameraModel padded_camera(const CameraModel& camera, double margin) {
  if (!(margin >= 0.0) || !std::isfinite(margin)) throw ArgumentError("capture margin must be >= 0");
  CameraModel out = camera;
  const int px = pad(margin, camera.width);
  const int py = pad(margin, camera.height);
  out.width += 2 * px;
  out.height += 2 * py;
  out.cx += px;
  out.cy += py;
  return out;
}

CapturedView capture_view(const scene::SceneSpec& scene, const CameraModel& camera, int layers, double margin) {
  const CameraModel wide = padded_camera(camera, margin);
  const RgbdFrame full = scene::render_scene(scene, wide);
  const auto [z_near, z_far] = scene::default_depth_range(scene);
  const mpi::MpiVolume binned = scene::mpi_from_rgbd(full, layers, z_near, z_far);
  const mpi::RenderedView view = mpi::render(binned, wide, true);

  CapturedView out;
  const int px = pad(margin, camera.width);
  const int py = pad(margin, camera.height);
  out.frame = {crop(full.rgb, px, py, camera.width, camera.height),
               crop(full.depth, px, py, camera.width, camera.height), camera};
  out.scale = mpi::compute_scale(full.depth, view.disparity);
  out.volume = std::make_shared<const mpi::MpiVolume>(mpi::rescale_mpi(binned, out.scale.scale));
  return out;
}

CaptureCache::CaptureCache(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, int layers,
                           double margin)
    : scene_(scene), trajectory_(trajectory), layers_(layers), margin_(margin) {}

std::shared_ptr<const CapturedView> CaptureCache::get(std::size_t index) {
  if (index >= trajectory_.size()) throw ArgumentError("capture index out of range");
  {
    std::lock_guard lock(mutex_);
    if (auto it = views_.find(index); it != views_.end()) return it->second;
  }
  auto view = std::make_shared<const CapturedView>(capture_view(scene_, trajectory_.poses[index], layers_, margin_));
  std::lock_guard lock(mutex_);
  return views_.try_emplace(index, std::move(view)).first->second;
}

}  // namespace lfcap::lab

#include "lfcap/mpi/scale.hpp"

#include <cmath>

#include "lfcap/errors.hpp"

namespace lfcap::mpi {

ScaleEstimate compute_scale(const Image& metric_depth, const Image& rendered_disparity) {
  require_channels(metric_depth, 1, "compute_scale depth");
  require_channels(rendered_disparity, 1, "compute_scale disparity");
  require_same_size(metric_depth, rendered_disparity, "compute_scale");

  const std::span<const float> depth = metric_depth.plane(0);
  const std::span<const float> disp = rendered_disparity.plane(0);
  double log_sum = 0.0;
  ScaleEstimate out;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const double d = depth[i];
    if (!(d > kDepthSentinel) || !std::isfinite(d)) continue;
    const double dh = disp[i];
    if (!(dh > 0.0) || !std::isfinite(dh)) {
      ++out.excluded_pixels;
      continue;
    }
    log_sum += std::log(dh) + std::log(d);
    ++out.used_pixels;
  }
  if (out.used_pixels == 0) throw ScaleError("compute_scale: no pixel with valid depth and positive disparity");

  out.scale = std::exp(log_sum / static_cast<double>(out.used_pixels));
  const std::size_t measured = out.used_pixels + out.excluded_pixels;
  if (2 * out.excluded_pixels > measured) {
    out.warning = "compute_scale: " + std::to_string(out.excluded_pixels) + " of " + std::to_string(measured) +
                  " measured pixels have no rendered disparity";
  }
  return out;
}

MpiVolume rescale_mpi(const MpiVolume& mpi, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ScaleError("rescale_mpi: scale must be finite and > 0");
  std::vector<MpiLayer> layers;
  layers.reserve(mpi.layer_count());
  // Density over s.
  const float inv_s = static_cast<float>(1.0 / s);
  for (const MpiLayer& layer : mpi.layers()) {
    Image density = layer.density();
    for (float& sigma : density.data()) sigma *= inv_s;
    layers.emplace_back(layer.shared_color(), std::make_shared<const Image>(std::move(density)), s * layer.depth());
  }
  return MpiVolume(std::move(layers), mpi.reference(), mpi.scale() * s);
}

}  // namespace lfcap::mpi

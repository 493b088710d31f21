#include "lfcap/mpi/overlay.hpp"

#include <cmath>

#include "lfcap/errors.hpp"
#include "lfcap/simd/kernels.hpp"

namespace lfcap::mpi {

namespace {

Image paint_mask(const ErrorMask& mask, const Rgb& error_color, const Image& base) {
  Image out(base.width(), base.height(), 3);
  const auto& k = simd::kernels();
  for (int c = 0; c < 3; ++c) {
    k.select_constant(mask.mask.data(), error_color[c], base.plane(c).data(), out.plane(c).data(),
                      base.pixel_count());
  }
  return out;
}

}  // namespace

Image overlay_black(const RenderedView& view, const Rgb& background) {
  require_channels(view.color, 3, "overlay color");
  require_same_size(view.color, view.alpha, "overlay alpha");
  Image out(view.width(), view.height(), 3);
  const auto& k = simd::kernels();
  for (int c = 0; c < 3; ++c) {
    k.over_background(view.alpha.plane(0).data(), view.color.plane(c).data(), background[c], out.plane(c).data(),
                      out.pixel_count());
  }
  return out;
}

ErrorMask error_mask(const Image& c_mpi, const Image& c_vid, double t) {
  require_channels(c_mpi, 3, "error_mask rendering");
  require_channels(c_vid, 3, "error_mask video");
  require_same_size(c_mpi, c_vid, "error_mask");
  if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("error_mask: threshold must be > 0");

  ErrorMask out;
  out.width = c_mpi.width();
  out.height = c_mpi.height();
  out.mask.assign(c_mpi.pixel_count(), 0);
  const float* a[3] = {c_mpi.plane(0).data(), c_mpi.plane(1).data(), c_mpi.plane(2).data()};
  const float* b[3] = {c_vid.plane(0).data(), c_vid.plane(1).data(), c_vid.plane(2).data()};
  out.count = simd::kernels().l1_exceeds(a, b, static_cast<float>(t), out.mask.data(), out.mask.size());
  out.rate = static_cast<double>(out.count) / static_cast<double>(out.mask.size());
  return out;
}

Image error_peak_video(const Image& c_mpi, const Image& c_vid, const OverlayConfig& config) {
  config.validate();
  return paint_mask(error_mask(c_mpi, c_vid, config.threshold), config.error_color, c_vid);
}

Image error_peak_mpi(const RenderedView& view, const Image& c_vid, const OverlayConfig& config) {
  config.validate();
  const ErrorMask mask = error_mask(view.color, c_vid, config.threshold);
  return paint_mask(mask, config.error_color, overlay_black(view, config.background));
}

Image apply_overlay(const RenderedView& view, const Image& c_vid, const OverlayConfig& config) {
  switch (config.mode) {
    case OverlayMode::raw:
      return c_vid;
    case OverlayMode::black_bg:
      return overlay_black(view, config.background);
    case OverlayMode::error_on_video:
      return error_peak_video(view.color, c_vid, config);
    case OverlayMode::error_on_mpi:
      return error_peak_mpi(view, c_vid, config);
  }
  throw ArgumentError("apply_overlay: unknown mode");
}

}  // namespace lfcap::mpi

#include "lfcap/mpi/composite.hpp"

#include <cmath>

#include "lfcap/errors.hpp"
#include "lfcap/simd/kernels.hpp"

namespace lfcap::mpi {

float opacity(float sigma, float delta) {
  if (!(sigma > 0.0F) || !(delta > 0.0F)) return 0.0F;
  if (std::isinf(sigma) || std::isinf(delta)) return 1.0F;
  return static_cast<float>(-std::expm1(-static_cast<double>(sigma) * static_cast<double>(delta)));
}

Compositor::Compositor(int width, int height, bool with_disparity)
    : width_(width),
      height_(height),
      transmittance_(static_cast<std::size_t>(width) * height, 1.0F),
      scratch_(static_cast<std::size_t>(width) * height, 0.0F) {
  view_.color = Image(width, height, 3);
  view_.alpha = Image(width, height, 1);
  if (with_disparity) view_.disparity = Image(width, height, 1);
}

void Compositor::add(const Image& color, const Image& density, const Image& delta, double disparity) {
  require_channels(density, 1, "composite density");
  require_channels(delta, 1, "composite delta");
  if (density.width() != width_ || density.height() != height_) {
    throw DimensionError("composite: layer density does not match target resolution");
  }
  require_same_size(density, delta, "composite delta");
  const std::span<const float> sigma = density.plane(0);
  const std::span<const float> dist = delta.plane(0);
  for (std::size_t i = 0; i < scratch_.size(); ++i) {
    if (sigma[i] < 0.0F || std::isnan(sigma[i])) throw InvariantError("composite: negative density");
    scratch_[i] = opacity(sigma[i], dist[i]);
  }
  step(color, scratch_, disparity);
}

void Compositor::add_opacity(const Image& color, const Image& opacity, double disparity) {
  require_channels(opacity, 1, "composite opacity");
  if (opacity.width() != width_ || opacity.height() != height_) {
    throw DimensionError("composite: layer opacity does not match target resolution");
  }
  for (float a : opacity.data()) {
    if (!(a >= 0.0F && a <= 1.0F)) throw InvariantError("composite: opacity outside [0,1]");
  }
  step(color, opacity.plane(0), disparity);
}

void Compositor::step(const Image& color, std::span<const float> opacity, double disparity) {
  require_channels(color, 3, "composite color");
  if (color.width() != width_ || color.height() != height_) {
    throw DimensionError("composite: layer color does not match target resolution");
  }
  simd::CompositeAccum acc{
      transmittance_.data(),
      view_.color.plane(0).data(),
      view_.color.plane(1).data(),
      view_.color.plane(2).data(),
      view_.alpha.plane(0).data(),
      view_.disparity.empty() ? nullptr : view_.disparity.plane(0).data(),
  };
  simd::kernels().composite_step(opacity.data(), color.plane(0).data(), color.plane(1).data(),
                                 color.plane(2).data(), static_cast<float>(disparity), acc, transmittance_.size());
  ++layers_;
}

RenderedView Compositor::finish() {
  std::span<float> alpha = view_.alpha.plane(0);
  // Alpha as 1 - T.
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = 1.0F - transmittance_[i];
  const simd::Kernels& k = simd::kernels();
  k.clamp_unit(alpha.data(), alpha.data(), alpha.size());
  for (int c = 0; c < 3; ++c) {
    float* plane = view_.color.plane(c).data();
    k.safe_divide(plane, alpha.data(), plane, alpha.size());
  }
  if (!view_.disparity.empty()) {
    float* disp = view_.disparity.plane(0).data();
    k.safe_divide(disp, alpha.data(), disp, alpha.size());
  }
  RenderedView out = std::move(view_);
  view_ = RenderedView{};
  return out;
}

RenderedView composite(std::span<const LayerSample> stack, bool with_disparity) {
  if (stack.empty()) throw EmptyInputError("composite: empty layer stack");
  const Image& first = stack.front().density;
  Compositor compositor(first.width(), first.height(), with_disparity);
  for (const LayerSample& layer : stack) {
    compositor.add(layer.color, layer.density, layer.delta, layer.disparity);
  }
  return compositor.finish();
}

}  // namespace lfcap::mpi

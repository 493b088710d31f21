#include "lfcap/mpi/types.hpp"

#include <cmath>
#include <string>

#include "lfcap/errors.hpp"

namespace lfcap::mpi {

MpiLayer::MpiLayer(Image color, Image density, double depth)
    : MpiLayer(std::make_shared<const Image>(std::move(color)), std::make_shared<const Image>(std::move(density)),
               depth) {}

MpiLayer::MpiLayer(std::shared_ptr<const Image> color, std::shared_ptr<const Image> density, double depth)
    : color_(std::move(color)), density_(std::move(density)), depth_(depth) {
  validate();
}

void MpiLayer::validate() const {
  if (!color_ || !density_) throw InvariantError("mpi layer: missing pixel data");
  require_channels(*color_, 3, "mpi layer color");
  require_channels(*density_, 1, "mpi layer density");
  require_same_size(*color_, *density_, "mpi layer");
  if (!(depth_ > 0.0) || !std::isfinite(depth_)) throw InvariantError("mpi layer: depth must be > 0");
  for (float sigma : density_->data()) {
    if (!(sigma >= 0.0F) || !std::isfinite(sigma)) {
      throw InvariantError("mpi layer: density must be finite and >= 0");
    }
  }
}

MpiLayer MpiLayer::with_depth(double depth) const { return MpiLayer(color_, density_, depth); }

MpiVolume::MpiVolume(std::vector<MpiLayer> layers, CameraModel reference, double scale)
    : layers_(std::move(layers)), reference_(std::move(reference)), scale_(scale) {
  validate();
}

void MpiVolume::validate() const {
  if (layers_.empty()) throw InvariantError("mpi volume: at least one layer required");
  reference_.validate();
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw InvariantError("mpi volume: scale must be > 0");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const MpiLayer& layer = layers_[i];
    if (layer.width() != reference_.width || layer.height() != reference_.height) {
      throw DimensionError("mpi volume: layer " + std::to_string(i) + " does not match reference resolution");
    }
    if (i > 0 && !(layer.depth() > layers_[i - 1].depth())) {
      throw InvariantError("mpi volume: layer depths must be strictly increasing (layer " + std::to_string(i) + ")");
    }
  }
}

std::vector<double> MpiVolume::depths() const {
  std::vector<double> out;
  out.reserve(layers_.size());
  for (const MpiLayer& layer : layers_) out.push_back(layer.depth());
  return out;
}

LayerExtent MpiVolume::extent(std::size_t i) const {
  const double z = layer(i).depth();
  return {z * reference_.width / reference_.f, z * reference_.height / reference_.f, z};
}

std::string_view overlay_mode_name(OverlayMode mode) {
  switch (mode) {
    case OverlayMode::raw:
      return "RAW";
    case OverlayMode::black_bg:
      return "BLACK_BG";
    case OverlayMode::error_on_video:
      return "ERROR_ON_VIDEO";
    case OverlayMode::error_on_mpi:
      return "ERROR_ON_MPI";
  }
  return "RAW";
}

OverlayMode parse_overlay_mode(std::string_view name) {
  for (OverlayMode mode :
       {OverlayMode::raw, OverlayMode::black_bg, OverlayMode::error_on_video, OverlayMode::error_on_mpi}) {
    if (name == overlay_mode_name(mode)) return mode;
  }
  throw ArgumentError("unknown visualization mode: " + std::string(name));
}

void OverlayConfig::validate() const {
  if (!(threshold > 0.0) || !std::isfinite(threshold)) throw ArgumentError("overlay: threshold must be > 0");
}

}  // namespace lfcap::mpi

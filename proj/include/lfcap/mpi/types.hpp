#pragma once

#include <array>
#include <memory>
#include <string_view>
#include <vector>

#include "lfcap/camera.hpp"
#include "lfcap/image.hpp"

namespace lfcap::mpi {

inline constexpr int kDefaultLayers = 32;
inline constexpr int kDefaultNearest = 3;
inline constexpr double kDefaultErrorThreshold = 0.4;

/// One fronto-parallel plane of an MPI: RGB color, volume density sigma and
/// the plane depth along the reference camera's optical axis.
///
/// Pixel grids are immutable and shared, so copying a layer (or rescaling
/// the volume it belongs to) never duplicates image data.
class MpiLayer {
 public:
  /// Throws DimensionError on mismatched grids, InvariantError on
  /// negative/non-finite density or non-positive depth.
  MpiLayer(Image color, Image density, double depth);
  MpiLayer(std::shared_ptr<const Image> color, std::shared_ptr<const Image> density, double depth);

  const Image& color() const { return *color_; }
  const std::shared_ptr<const Image>& shared_color() const { return color_; }
  const std::shared_ptr<const Image>& shared_density() const { return density_; }
  const Image& density() const { return *density_; }
  double depth() const { return depth_; }
  int width() const { return color_->width(); }
  int height() const { return color_->height(); }

  MpiLayer with_depth(double depth) const;

 private:
  void validate() const;

  std::shared_ptr<const Image> color_;
  std::shared_ptr<const Image> density_;
  double depth_;
};

/// Metric extent of a layer's plane rectangle.
struct LayerExtent {
  double width;
  double height;
  double depth;
};

/// Layers ordered near to far (index 0 closest), anchored at the camera that
/// captured them.
class MpiVolume {
 public:
  MpiVolume(std::vector<MpiLayer> layers, CameraModel reference, double scale = 1.0);

  const std::vector<MpiLayer>& layers() const { return layers_; }
  const MpiLayer& layer(std::size_t i) const { return layers_.at(i); }
  std::size_t layer_count() const { return layers_.size(); }
  const CameraModel& reference() const { return reference_; }
  double scale() const { return scale_; }

  std::vector<double> depths() const;

  /// Plane rectangle of layer i: depth z_i and the extents z_i * w / f,
  /// z_i * h / f spanned by the reference image at that depth.
  LayerExtent extent(std::size_t i) const;

 private:
  void validate() const;

  std::vector<MpiLayer> layers_;
  CameraModel reference_;
  double scale_;
};

/// Rendered color, alpha and (optionally) disparity at a target camera.
/// Color and disparity are straight values: multiply by alpha to get the
/// premultiplied over-accumulation.
struct RenderedView {
  Image color;      // 3 channels
  Image alpha;      // 1 channel, in [0,1]
  Image disparity;  // 1 channel, empty when not requested

  int width() const { return color.width(); }
  int height() const { return color.height(); }
};

enum class OverlayMode { raw, black_bg, error_on_video, error_on_mpi };

std::string_view overlay_mode_name(OverlayMode mode);

/// Parses "RAW", "BLACK_BG", "ERROR_ON_VIDEO", "ERROR_ON_MPI"; throws
/// ArgumentError otherwise.
OverlayMode parse_overlay_mode(std::string_view name);

using Rgb = std::array<float, 3>;

struct OverlayConfig {
  OverlayMode mode = OverlayMode::error_on_mpi;
  Rgb error_color{1.0F, 0.0F, 0.0F};
  /// L1 threshold over the summed RGB difference (range [0, 3]).
  double threshold = kDefaultErrorThreshold;
  Rgb background{0.0F, 0.0F, 0.0F};

  void validate() const;
};

}  // namespace lfcap::mpi

#pragma once

#include <span>
#include <vector>

#include "lfcap/image.hpp"
#include "lfcap/mpi/types.hpp"

namespace lfcap::mpi {

/// One layer of a warped stack at the target view.
struct LayerSample {
  Image color;       // 3 channels
  Image density;     // 1 channel, sigma >= 0 (+inf allowed: fully opaque)
  Image delta;       // 1 channel, along-ray distance to the next plane
  double disparity;  // 1 / z of the plane, composited into the disparity map
};

/// Opacity of a density sample over an along-ray interval:
/// 1 - exp(-delta * sigma). Zero when sigma or delta is not positive.
float opacity(float sigma, float delta);

/// Front-to-back over-operator accumulation, one layer at a time:
///   C += T * a_i * c_i,  A += T * a_i,  T *= (1 - a_i)
/// Feeding layers near to far and calling finish() yields the composited
/// view. Layers are streamed so a full stack never has to be materialized.
class Compositor {
 public:
  Compositor(int width, int height, bool with_disparity);

  /// Adds a layer given as density plus per-pixel interval. Throws
  /// DimensionError on size mismatch and InvariantError on negative density.
  void add(const Image& color, const Image& density, const Image& delta, double disparity);

  /// Adds a layer given directly as per-pixel opacity in [0,1].
  void add_opacity(const Image& color, const Image& opacity, double disparity);

  std::size_t layers_added() const { return layers_; }

  /// Alpha is clamped to [0,1]; color and disparity are divided by it so the
  /// view carries straight (not premultiplied) values, zero where alpha is 0.
  /// The compositor is left empty.
  RenderedView finish();

 private:
  void step(const Image& color, std::span<const float> opacity, double disparity);

  int width_;
  int height_;
  std::vector<float> transmittance_;
  RenderedView view_;
  std::vector<float> scratch_;
  std::size_t layers_ = 0;
};

/// Composites a near-to-far stack. Throws EmptyInputError for an empty stack.
RenderedView composite(std::span<const LayerSample> stack, bool with_disparity = true);

}  // namespace lfcap::mpi

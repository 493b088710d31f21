#include "lfcap/mpi/render.hpp"

#include <cmath>

#include "lfcap/mpi/composite.hpp"
#include "lfcap/mpi/warp.hpp"

namespace lfcap::mpi {

double layer_interval(const std::vector<double>& depths, std::size_t i, double factor) {
  double gap = 0.0;
  if (depths.size() == 1) {
    gap = depths[0];
  } else if (i + 1 < depths.size()) {
    gap = depths[i + 1] - depths[i];
  } else {
    gap = depths[i] - depths[i - 1];
  }
  return gap * factor;
}

RenderedView render(const MpiVolume& mpi, const CameraModel& target, bool with_disparity) {
  target.validate();
  const CameraModel& source = mpi.reference();
  const PlaneRayGeometry geom(source, target);

  Image factor(target.width, target.height, 1);
  std::span<float> fplane = factor.plane(0);
  for (int y = 0; y < target.height; ++y) {
    for (int x = 0; x < target.width; ++x) {
      const double facing = std::abs(geom.facing(x, y));
      const double f = facing > 0.0 ? geom.ray_length(x, y) / facing : 0.0;
      fplane[static_cast<std::size_t>(y) * target.width + x] = std::isfinite(f) ? static_cast<float>(f) : 0.0F;
    }
  }

  const std::vector<double> depths = mpi.depths();
  Compositor compositor(target.width, target.height, with_disparity);
  Image delta(target.width, target.height, 1);
  for (std::size_t i = 0; i < depths.size(); ++i) {
    const WarpedLayer warped = warp_layer(mpi.layer(i), source, target);
    const double unit_gap = layer_interval(depths, i, 1.0);
    std::span<float> dplane = delta.plane(0);
    for (std::size_t p = 0; p < dplane.size(); ++p) dplane[p] = static_cast<float>(unit_gap * fplane[p]);
    compositor.add(warped.color, warped.density, delta, 1.0 / depths[i]);
  }
  return compositor.finish();
}

}  // namespace lfcap::mpi

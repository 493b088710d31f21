#include "lfcap/mpi/blend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/render.hpp"
#include "lfcap/simd/kernels.hpp"

namespace lfcap::mpi {

NearestSet select_k_nearest(std::span<const Eigen::Vector3d> centers, const CameraModel& target, std::size_t k) {
  if (centers.empty()) throw EmptyInputError("select_k_nearest: no registered volumes");
  if (k == 0) throw ArgumentError("select_k_nearest: k must be >= 1");

  std::vector<double> dist(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) dist[i] = (centers[i] - target.center).norm();

  std::vector<std::size_t> order(centers.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  order.resize(std::min(k, order.size()));

  NearestSet out;
  out.indices = order;
  for (std::size_t i : order) {
    out.distances.push_back(dist[i]);
    out.gamma = std::max(out.gamma, dist[i]);
  }
  return out;
}

NearestSet select_k_nearest(std::span<const MpiVolume* const> volumes, const CameraModel& target, std::size_t k) {
  std::vector<Eigen::Vector3d> centers;
  centers.reserve(volumes.size());
  for (const MpiVolume* v : volumes) centers.push_back(v->reference().center);
  return select_k_nearest(centers, target, k);
}

std::vector<double> blend_weights(std::span<const double> distances, double gamma) {
  if (distances.empty()) throw EmptyInputError("blend_weights: no distances");
  if (gamma < 0.0 || !std::isfinite(gamma)) throw ArgumentError("blend_weights: gamma must be finite and >= 0");
  std::vector<double> w(distances.size(), 1.0);
  if (gamma > 0.0) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-distances[i] / gamma);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

RenderedView blend_renders(std::span<const RenderedView> renders, std::span<const double> distances, double gamma) {
  if (renders.empty()) throw EmptyInputError("blend_renders: no renders");
  if (renders.size() != distances.size()) throw ArgumentError("blend_renders: one distance per render required");
  const RenderedView& first = renders.front();
  bool all_disparity = true;
  for (const RenderedView& r : renders) {
    require_channels(r.color, 3, "blend color");
    require_channels(r.alpha, 1, "blend alpha");
    require_same_size(first.color, r.color, "blend_renders");
    require_same_size(r.color, r.alpha, "blend_renders alpha");
    all_disparity = all_disparity && !r.disparity.empty();
  }
  const std::vector<double> weights = blend_weights(distances, gamma);
  // A single render comes back unchanged.
  if (renders.size() == 1) return first;

  const int w = first.width();
  const int h = first.height();
  const std::size_t n = first.color.pixel_count();
  const auto& k = simd::kernels();
  std::vector<float> ones(n, 1.0F);

  Image denom(w, h, 1);
  Image color_num(w, h, 3);
  Image disp_num = all_disparity ? Image(w, h, 1) : Image();
  for (std::size_t r = 0; r < renders.size(); ++r) {
    const float wk = static_cast<float>(weights[r]);
    const float* alpha = renders[r].alpha.plane(0).data();
    k.weighted_accumulate(wk, alpha, ones.data(), denom.plane(0).data(), n);
    for (int c = 0; c < 3; ++c) {
      k.weighted_accumulate(wk, alpha, renders[r].color.plane(c).data(), color_num.plane(c).data(), n);
    }
    if (all_disparity) k.weighted_accumulate(wk, alpha, renders[r].disparity.plane(0).data(), disp_num.plane(0).data(), n);
  }

  RenderedView out{Image(w, h, 3), Image(w, h, 1), all_disparity ? Image(w, h, 1) : Image()};
  for (int c = 0; c < 3; ++c) {
    k.safe_divide(color_num.plane(c).data(), denom.plane(0).data(), out.color.plane(c).data(), n);
  }
  if (all_disparity) k.safe_divide(disp_num.plane(0).data(), denom.plane(0).data(), out.disparity.plane(0).data(), n);
  k.clamp_unit(denom.plane(0).data(), out.alpha.plane(0).data(), n);
  return out;
}

NearestRender render_nearest(std::span<const MpiVolume* const> volumes, const CameraModel& target, std::size_t k,
                             bool with_disparity) {
  NearestSet nearest = select_k_nearest(volumes, target, k);
  std::vector<RenderedView> renders;
  renders.reserve(nearest.indices.size());
  for (std::size_t i : nearest.indices) renders.push_back(render(*volumes[i], target, with_disparity));
  RenderedView view = renders.size() == 1 ? std::move(renders.front())
                                          : blend_renders(renders, nearest.distances, nearest.gamma);
  return {std::move(view), std::move(nearest)};
}

}  // namespace lfcap::mpi

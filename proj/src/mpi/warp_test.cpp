#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lfcap/mpi/warp.hpp"
#include "testing.hpp"

using namespace lfcap;
using namespace lfcap::mpi;

namespace {

MpiLayer random_layer(int w, int h, double depth, std::mt19937& rng) {
  Image density = testing::random_image(w, h, 1, rng, 0.5F, 2.0F);
  return MpiLayer(testing::random_image(w, h, 3, rng), std::move(density), depth);
}

double bilinear(const Image& img, int c, double u, double v) {
  const int x0 = static_cast<int>(std::floor(u));
  const int y0 = static_cast<int>(std::floor(v));
  const double ax = u - x0, ay = v - y0;
  auto px = [&](int x, int y) {
    x = std::clamp(x, 0, img.width() - 1);
    y = std::clamp(y, 0, img.height() - 1);
    return static_cast<double>(img.at(c, x, y));
  };
  return (1 - ax) * (1 - ay) * px(x0, y0) + ax * (1 - ay) * px(x0 + 1, y0) + (1 - ax) * ay * px(x0, y0 + 1) +
         ax * ay * px(x0 + 1, y0 + 1);
}

}  // namespace

TEST_CASE("identity warp reproduces the layer") {
  std::mt19937 rng(1);
  const CameraModel cam = CameraModel::centered(17, 11, 20.0);
  const MpiLayer layer = random_layer(17, 11, 1.7, rng);
  const WarpedLayer w = warp_layer(layer, cam, cam);
  CHECK(testing::max_abs_diff(w.color, layer.color()) < 1e-6);
  CHECK(testing::max_abs_diff(w.density, layer.density()) < 1e-6);
}

TEST_CASE("sideways move shifts the plane by f b / z pixels") {
  std::mt19937 rng(2);
  const double f = 50.0, z = 2.0, shift = 25.0;
  const CameraModel src = CameraModel::centered(64, 8, f);
  const CameraModel dst = src.with_center(Eigen::Vector3d(shift * z / f, 0, 0));
  const MpiLayer layer = random_layer(64, 8, z, rng);
  const WarpedLayer w = warp_layer(layer, src, dst);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 64; ++x) {
      if (x + 25 <= 63) {
        for (int c = 0; c < 3; ++c) CHECK(w.color.at(c, x, y) == doctest::Approx(layer.color().at(c, x + 25, y)).epsilon(1e-5));
        CHECK(w.density.at(0, x, y) == doctest::Approx(layer.density().at(0, x + 25, y)).epsilon(1e-5));
      } else {
        CHECK(w.density.at(0, x, y) == 0.0F);
        CHECK(w.color.at(0, x, y) == 0.0F);
      }
    }
  }
}

TEST_CASE("homography matches ray-plane intersection") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const CameraModel base = CameraModel::centered(40, 30, 35.0);
  for (int trial = 0; trial < 10; ++trial) {
    const CameraModel src = base.with_pose(look_rotation(Eigen::Vector3d(0.1 * u(rng), 0.1 * u(rng), 1.0)),
                                           Eigen::Vector3d(0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)));
    const CameraModel dst = base.with_pose(look_rotation(Eigen::Vector3d(0.1 * u(rng), 0.1 * u(rng), 1.0)),
                                           Eigen::Vector3d(0.2 * u(rng), 0.2 * u(rng), 0.2 * u(rng)));
    const double depth = 1.5 + u(rng);
    const MpiLayer layer = random_layer(40, 30, depth, rng);
    const WarpedLayer w = warp_layer(layer, src, dst);
    const Eigen::Vector3d n = src.optical_axis();
    for (int y = 0; y < 30; y += 3) {
      for (int x = 0; x < 40; x += 3) {
        const Eigen::Vector3d d = dst.ray(x, y);
        const double t = (depth - n.dot(dst.center - src.center)) / n.dot(d);
        const auto p = src.project(dst.center + t * d);
        REQUIRE(p);
        const bool inside = p->x() >= -0.5 && p->x() <= 39.5 && p->y() >= -0.5 && p->y() <= 29.5;
        if (!inside) {
          CHECK(w.density.at(0, x, y) == 0.0F);
          continue;
        }
        for (int c = 0; c < 3; ++c) {
          CHECK(w.color.at(c, x, y) == doctest::Approx(bilinear(layer.color(), c, p->x(), p->y())).epsilon(1e-4));
        }
        CHECK(w.density.at(0, x, y) == doctest::Approx(bilinear(layer.density(), 0, p->x(), p->y())).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("plane geometry intervals") {
  const CameraModel src = CameraModel::centered(10, 10, 10.0);
  const CameraModel dst = src.with_center(Eigen::Vector3d(0, 0, 0.5));
  const PlaneRayGeometry g(src, dst);
  CHECK(g.target_depth(2.0, 4.5, 4.5) == doctest::Approx(1.5));
  CHECK(g.target_depth(0.25, 4.5, 4.5) < 0.0);
  CHECK(g.ray_length(4.5, 4.5) == doctest::Approx(1.0));
  // Oblique pixel: along-ray gap is |d| / (n.d) times the plane gap.
  const double len = std::sqrt(1.0 + 0.45 * 0.45);
  CHECK(g.gap(1.0, 2.0, 9.0, 4.5) == doctest::Approx(len));
}

TEST_CASE("plane behind the target camera is transparent") {
  std::mt19937 rng(4);
  const CameraModel src = CameraModel::centered(8, 8, 8.0);
  const CameraModel dst = src.with_center(Eigen::Vector3d(0, 0, 3.0));
  const WarpedLayer w = warp_layer(random_layer(8, 8, 1.0, rng), src, dst);
  for (float s : w.density.data()) CHECK(s == 0.0F);
}

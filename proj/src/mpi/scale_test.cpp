#include <doctest.h>

#include <cmath>
#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/scale.hpp"
#include "testing.hpp"

using namespace lfcap;
using namespace lfcap::mpi;

namespace {

MpiVolume small_volume(const std::vector<double>& depths) {
  const CameraModel cam = CameraModel::centered(6, 4, 5.0);
  std::vector<MpiLayer> layers;
  for (double z : depths) layers.emplace_back(Image(6, 4, 3, 0.5F), Image(6, 4, 1, 1.0F), z);
  return MpiVolume(std::move(layers), cam);
}

}  // namespace

TEST_CASE("metric disparity gives unit scale") {
  std::mt19937 rng(1);
  Image depth = testing::random_image(10, 10, 1, rng, 0.5F, 3.0F);
  Image disp(10, 10, 1);
  for (std::size_t i = 0; i < depth.pixel_count(); ++i) disp.plane(0)[i] = 1.0F / depth.plane(0)[i];
  CHECK(compute_scale(depth, disp).scale == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scale examples") {
  const Image depth(4, 4, 1, 2.0F);
  const Image disp(4, 4, 1, 1.0F);
  const ScaleEstimate s = compute_scale(depth, disp);
  CHECK(s.scale == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.used_pixels == 16);

  // Half the pixels at D*d = 2, half at 8: geometric mean 4.
  Image d2(4, 2, 1, 1.0F);
  Image h2(4, 2, 1);
  for (int x = 0; x < 4; ++x) {
    h2.at(0, x, 0) = 2.0F;
    h2.at(0, x, 1) = 8.0F;
  }
  CHECK(compute_scale(d2, h2).scale == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("scale is equivariant in metric depth") {
  std::mt19937 rng(2);
  const Image depth = testing::random_image(8, 8, 1, rng, 0.5F, 3.0F);
  const Image disp = testing::random_image(8, 8, 1, rng, 0.1F, 2.0F);
  const double s = compute_scale(depth, disp).scale;
  for (float lambda : {0.5F, 3.0F}) {
    Image scaled = depth;
    for (float& v : scaled.data()) v *= lambda;
    CHECK(compute_scale(scaled, disp).scale == doctest::Approx(s * lambda).epsilon(1e-6));
  }
}

TEST_CASE("invalid pixels are excluded") {
  Image depth(4, 1, 1, 1.0F);
  Image disp(4, 1, 1, 2.0F);
  depth.at(0, 0, 0) = kDepthSentinel;
  disp.at(0, 1, 0) = 0.0F;
  const ScaleEstimate s = compute_scale(depth, disp);
  CHECK(s.scale == doctest::Approx(2.0));
  CHECK(s.used_pixels == 2);
  CHECK(s.excluded_pixels == 1);
  CHECK_FALSE(s.warning);

  disp.at(0, 2, 0) = 0.0F;
  CHECK(compute_scale(depth, disp).warning);
  CHECK_THROWS_AS(compute_scale(Image(3, 3, 1), Image(3, 3, 1, 1.0F)), ScaleError);
  CHECK_THROWS_AS(compute_scale(Image(3, 3, 1), Image(4, 3, 1)), DimensionError);
}

TEST_CASE("rescale moves planes about the camera center") {
  const MpiVolume m = small_volume({1.0, 2.0, 4.0});
  const MpiVolume r = rescale_mpi(m, 2.0);
  CHECK(r.depths() == std::vector<double>{2.0, 4.0, 8.0});
  CHECK(r.scale() == doctest::Approx(2.0));
  CHECK(r.extent(1).width == doctest::Approx(4.0 * 6 / 5.0));
  CHECK(r.extent(1).height == doctest::Approx(4.0 * 4 / 5.0));
  CHECK(r.layer(0).shared_color() == m.layer(0).shared_color());
  CHECK(r.layer(0).density().at(0, 0, 0) == doctest::Approx(0.5));

  const MpiVolume same = rescale_mpi(m, 1.0);
  CHECK(same.depths() == m.depths());
  CHECK(same.layer(2).density() == m.layer(2).density());

  const MpiVolume back = rescale_mpi(rescale_mpi(m, 7.3), 1.0 / 7.3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.depths()[i] == doctest::Approx(m.depths()[i]).epsilon(1e-12));

  CHECK_THROWS_AS(rescale_mpi(m, 0.0), ScaleError);
  CHECK_THROWS_AS(rescale_mpi(m, -1.0), ScaleError);
}

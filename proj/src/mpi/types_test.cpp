#include <doctest.h>

#include <cmath>
#include <limits>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/types.hpp"

using namespace lfcap;
using namespace lfcap::mpi;

TEST_CASE("layer invariants") {
  CHECK_NOTHROW(MpiLayer(Image(2, 2, 3), Image(2, 2, 1), 1.0));
  CHECK_THROWS_AS(MpiLayer(Image(2, 2, 3), Image(3, 2, 1), 1.0), DimensionError);
  CHECK_THROWS_AS(MpiLayer(Image(2, 2, 1), Image(2, 2, 1), 1.0), DimensionError);
  CHECK_THROWS_AS(MpiLayer(Image(2, 2, 3), Image(2, 2, 1), 0.0), InvariantError);
  CHECK_THROWS_AS(MpiLayer(Image(2, 2, 3), Image(2, 2, 1, -0.1F), 1.0), InvariantError);
  CHECK_THROWS_AS(MpiLayer(Image(2, 2, 3), Image(2, 2, 1, std::numeric_limits<float>::quiet_NaN()), 1.0),
                  InvariantError);
}

TEST_CASE("volume invariants") {
  const CameraModel cam = CameraModel::centered(2, 2, 1.0);
  auto layer = [](double z) { return MpiLayer(Image(2, 2, 3), Image(2, 2, 1), z); };
  CHECK_NOTHROW(MpiVolume({layer(1.0), layer(2.0)}, cam));
  CHECK_THROWS_AS(MpiVolume({layer(2.0), layer(1.0)}, cam), InvariantError);
  CHECK_THROWS_AS(MpiVolume({layer(1.0), layer(1.0)}, cam), InvariantError);
  CHECK_THROWS_AS(MpiVolume({}, cam), InvariantError);
  CHECK_THROWS_AS(MpiVolume({layer(1.0)}, CameraModel::centered(3, 2, 1.0)), DimensionError);
  CHECK_THROWS_AS(MpiVolume({layer(1.0)}, cam, 0.0), InvariantError);

  const MpiVolume v({layer(1.0), layer(3.0)}, CameraModel::centered(2, 2, 4.0));
  CHECK(v.extent(1).width == doctest::Approx(1.5));
  CHECK(v.extent(1).depth == 3.0);
}

TEST_CASE("overlay mode names round trip") {
  for (OverlayMode m : {OverlayMode::raw, OverlayMode::black_bg, OverlayMode::error_on_video, OverlayMode::error_on_mpi}) {
    CHECK(parse_overlay_mode(overlay_mode_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_overlay_mode("error_on_mpi"), ArgumentError);
  OverlayConfig cfg;
  cfg.threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

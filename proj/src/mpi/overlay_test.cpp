#include <doctest.h>

#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/overlay.hpp"
#include "testing.hpp"

using namespace lfcap;
using namespace lfcap::mpi;

namespace {

bool pixel_is(const Image& img, int x, int y, const Rgb& c) {
  return img.at(0, x, y) == c[0] && img.at(1, x, y) == c[1] && img.at(2, x, y) == c[2];
}

}  // namespace

TEST_CASE("overlay over black") {
  RenderedView v{Image(3, 2, 3, 1.0F), Image(3, 2, 1, 1.0F), Image()};
  CHECK(overlay_black(v) == v.color);
  v.alpha.fill(0.0F);
  const Image clear = overlay_black(v);
  for (float x : clear.data()) CHECK(x == 0.0F);
  v.alpha.fill(0.25F);
  const Image quarter = overlay_black(v);
  for (float x : quarter.data()) CHECK(x == doctest::Approx(0.25));
}

TEST_CASE("error mask counts pixels over the threshold") {
  Image a(4, 2, 3, 0.5F);
  CHECK(error_mask(a, a, 0.4).rate == 0.0);
  Image b = a;
  for (int x = 0; x < 4; ++x) b.at(0, x, 0) = 1.0F;
  const ErrorMask m = error_mask(a, b, 0.4);
  CHECK(m.rate == doctest::Approx(0.5));
  CHECK(m.count == 4);
  CHECK(m.mask[0] == 1);
  CHECK(m.mask[4] == 0);
  CHECK_THROWS_AS(error_mask(a, Image(3, 2, 3), 0.4), DimensionError);
  CHECK_THROWS_AS(error_mask(a, b, 0.0), ArgumentError);
}

TEST_CASE("error rate is monotone in t and symmetric") {
  std::mt19937 rng(3);
  const Image a = testing::random_image(32, 32, 3, rng);
  const Image b = testing::random_image(32, 32, 3, rng);
  double prev = 1.0;
  for (double t = 0.01; t < 3.0; t += 0.01) {
    const double r = error_mask(a, b, t).rate;
    CHECK(r <= prev);
    CHECK(r == error_mask(b, a, t).rate);
    CHECK(error_mask(a, a, t).rate == 0.0);
    prev = r;
  }
}

TEST_CASE("error peaking on video") {
  std::mt19937 rng(4);
  const Image mpi = testing::random_image(16, 16, 3, rng);
  const Image vid = testing::random_image(16, 16, 3, rng);
  OverlayConfig cfg;
  CHECK(error_peak_video(vid, vid, cfg) == vid);

  const Image out = error_peak_video(mpi, vid, cfg);
  const ErrorMask m = error_mask(mpi, vid, cfg.threshold);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      const bool flagged = m.mask[y * 16 + x] != 0;
      const bool changed = !pixel_is(out, x, y, {vid.at(0, x, y), vid.at(1, x, y), vid.at(2, x, y)});
      if (flagged) CHECK(pixel_is(out, x, y, cfg.error_color));
      // The error color may coincide with the video pixel; otherwise the
      // changed set is exactly the mask.
      if (!pixel_is(vid, x, y, cfg.error_color)) CHECK(flagged == changed);
    }
  }
  Image far(16, 16, 3, 1.0F);
  const Image all = error_peak_video(far, Image(16, 16, 3, 0.0F), cfg);
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) CHECK(pixel_is(all, x, y, cfg.error_color));
}

TEST_CASE("error peaking on the rendering") {
  std::mt19937 rng(5);
  RenderedView v{testing::random_image(16, 16, 3, rng), testing::random_image(16, 16, 1, rng), Image()};
  const Image vid = testing::random_image(16, 16, 3, rng);
  OverlayConfig cfg;
  cfg.error_color = {0.0F, 1.0F, 0.0F};
  CHECK(error_peak_mpi(v, v.color, cfg) == overlay_black(v));

  const Image out = error_peak_mpi(v, vid, cfg);
  const Image base = overlay_black(v);
  const ErrorMask m = error_mask(v.color, vid, cfg.threshold);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      if (m.mask[y * 16 + x]) {
        CHECK(pixel_is(out, x, y, cfg.error_color));
      } else {
        CHECK(pixel_is(out, x, y, {base.at(0, x, y), base.at(1, x, y), base.at(2, x, y)}));
      }
    }
  }
}

TEST_CASE("overlay modes") {
  std::mt19937 rng(6);
  RenderedView v{testing::random_image(8, 8, 3, rng), testing::random_image(8, 8, 1, rng), Image()};
  const Image vid = testing::random_image(8, 8, 3, rng);
  OverlayConfig cfg;
  cfg.mode = OverlayMode::raw;
  CHECK(apply_overlay(v, vid, cfg) == vid);
  cfg.mode = OverlayMode::black_bg;
  CHECK(apply_overlay(v, vid, cfg) == overlay_black(v));
  cfg.mode = OverlayMode::error_on_video;
  CHECK(apply_overlay(v, vid, cfg) == error_peak_video(v.color, vid, cfg));
  cfg.mode = OverlayMode::error_on_mpi;
  CHECK(apply_overlay(v, vid, cfg) == error_peak_mpi(v, vid, cfg));
}

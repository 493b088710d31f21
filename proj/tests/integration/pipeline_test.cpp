#include <doctest.h>

#include "lfcap/lab/capture.hpp"
#include "lfcap/lab/evaluate.hpp"
#include "lfcap/lab/metrics.hpp"
#include "lfcap/mpi/blend.hpp"
#include "lfcap/mpi/overlay.hpp"
#include "lfcap/scene/binning.hpp"
#include "lfcap/scene/formats.hpp"
#include "testing.hpp"

using namespace lfcap;

TEST_CASE("saved captures render like the in-memory ones") {
  const scene::SceneSpec s = scene::preset_scene("shelf");
  const CameraModel cam = scene::default_camera(40, 64, 0.8);
  testing::TempDir dir("pipeline");
  std::vector<mpi::MpiVolume> loaded;
  std::vector<lab::CapturedView> views;
  for (int i = 0; i < 3; ++i) {
    views.push_back(lab::capture_view(s, cam.with_center({0.1 * i, 0.0, 0.0}), 16));
    scene::save_mpi(dir / std::to_string(i), *views.back().volume);
    loaded.push_back(scene::load_mpi(dir / std::to_string(i)));
  }
  std::vector<const mpi::MpiVolume*> a, b;
  for (int i = 0; i < 3; ++i) {
    a.push_back(views[i].volume.get());
    b.push_back(&loaded[i]);
  }
  const CameraModel target = cam.with_center({0.13, 0.01, 0.0});
  const Image ra = mpi::overlay_black(mpi::render_nearest(a, target, 2).view);
  const Image rb = mpi::overlay_black(mpi::render_nearest(b, target, 2).view);
  CHECK(testing::max_abs_diff(ra, rb) <= 2.0 / 255.0);
  // At its own pose a loaded volume reproduces the oracle frame up to 8-bit
  // color quantization.
  const CameraModel own = cam.with_center({0.1, 0.0, 0.0});
  const Image back = mpi::overlay_black(mpi::render_nearest(b, own, 1).view);
  CHECK(lab::psnr(back, scene::render_scene(s, own).rgb) >= 45.0);
}

TEST_CASE("capture then blend beats the nearest single view") {
  const scene::SceneSpec s = scene::preset_scene("office");
  const auto traj = scene::Trajectory::linear(scene::default_camera(40, 64, 0.8), {0.4, 0, 0}, 9);
  lab::CaptureCache cache(s, traj, 16);
  std::vector<lab::PolicyRun> runs(2);
  runs[0].policy = lab::PolicyId::ours;
  runs[0].indices = {0, 8};
  runs[1].policy = lab::PolicyId::uniform;
  runs[1].indices = {0, 2, 4, 6, 8};
  const lab::EvalReport rep = lab::evaluate(s, traj, runs, {16, 3, 1}, &cache);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[1].psnr > rep.rows[0].psnr);
  CHECK(rep.ground_truth.size() == 4);
}

TEST_CASE("error overlay marks the pixels a capture fixes") {
  const scene::SceneSpec s = scene::preset_scene("pillars");
  const CameraModel cam = scene::default_camera(40, 64, 0.8);
  const lab::CapturedView far = lab::capture_view(s, cam, 16);
  const CameraModel target = cam.with_center({0.35, 0.0, 0.0});
  const std::vector<const mpi::MpiVolume*> one{far.volume.get()};
  const mpi::RenderedView view = mpi::render_nearest(one, target, 1).view;
  const Image video = scene::render_scene(s, target).rgb;
  const mpi::ErrorMask before = mpi::error_mask(view.color, video, 0.4);
  const lab::CapturedView near = lab::capture_view(s, target, 16);
  const std::vector<const mpi::MpiVolume*> two{far.volume.get(), near.volume.get()};
  const mpi::ErrorMask after = mpi::error_mask(mpi::render_nearest(two, target, 1).view.color, video, 0.4);
  CHECK(before.rate > 0.0);
  CHECK(after.rate < before.rate);
}

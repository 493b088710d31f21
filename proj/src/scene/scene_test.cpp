#include <doctest.h>

#include <cmath>
#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/scale.hpp"
#include "lfcap/scene/scene.hpp"

using namespace lfcap;
using namespace lfcap::scene;

namespace {

SceneSpec checker_plane(double z, double cell) {
  SceneSpec s;
  s.primitives.push_back(Primitive::rect({0, 0, z}, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), 20.0, 20.0,
                                         Texture::checker({1, 1, 1}, {0, 0, 0}, cell)));
  return s;
}

}  // namespace

TEST_CASE("fronto-parallel plane has constant depth") {
  const RgbdFrame f = render_scene(checker_plane(2.0, 0.1), CameraModel::centered(32, 24, 30.0));
  for (float d : f.depth.data()) CHECK(d == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("rays that miss get background and sentinel") {
  SceneSpec s;
  s.background = {0.1F, 0.2F, 0.3F};
  s.primitives.push_back(Primitive::rect({0, 0, 2}, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), 0.1, 0.1,
                                         Texture::solid({1, 1, 1})));
  const RgbdFrame f = render_scene(s, CameraModel::centered(21, 21, 10.0));
  CHECK(f.depth.at(0, 0, 0) == mpi::kDepthSentinel);
  CHECK(f.rgb.at(2, 0, 0) == 0.3F);
  CHECK(f.depth.at(0, 10, 10) == doctest::Approx(2.0));
  CHECK(f.rgb.at(0, 10, 10) == 1.0F);
}

TEST_CASE("checker lines project to pinhole positions") {
  // The checker color crosses the midpoint exactly on cell boundaries.
  // Locate the crossings along a row with sub-pixel interpolation and
  // compare with the projection of the boundary lines.
  const double cell = 0.25, z = 2.0;
  CameraModel cam = CameraModel::centered(160, 40, 120.0);
  cam = cam.with_center({0.03, 0.07, 0.0});
  const RgbdFrame f = render_scene(checker_plane(z, cell), cam);
  const int row = 13;
  // Rect corner sits at (-10, -10); u = x + 10.
  const double v = cam.center.y() + (row - cam.cy) / cam.f * z + 10.0;
  const double sv = std::sin(M_PI * v / cell);
  REQUIRE(std::abs(sv) > 0.2);
  int found = 0;
  for (int x = 0; x + 1 < cam.width; ++x) {
    const double a = f.rgb.at(0, x, row) - 0.5, b = f.rgb.at(0, x + 1, row) - 0.5;
    if (a == 0.0 || a * b >= 0.0) continue;
    const double crossing = x + a / (a - b);
    const double u_world = std::round(((cam.center.x() + (crossing - cam.cx) / cam.f * z) + 10.0) / cell) * cell - 10.0;
    const auto p = cam.project({u_world, 0.0, z});
    REQUIRE(p);
    CHECK(std::abs(crossing - p->x()) <= 0.5);
    ++found;
  }
  CHECK(found >= 8);
}

TEST_CASE("depth equals analytic intersection on random rays") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Primitive box = Primitive::box({-0.3, -0.2, 1.0}, {0.4, 0.3, 1.5}, Texture::solid({1, 0, 0}));
  const Primitive tilted = Primitive::rect({0, 0, 3}, Eigen::Vector3d(1, 0, 0.3).normalized(),
                                           Eigen::Vector3d::UnitY(), 8, 8, Texture::solid({0, 1, 0}));
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const Eigen::Vector3d o(0.1 * u(rng), 0.1 * u(rng), 0.0);
    const Eigen::Vector3d d(0.6 * u(rng), 0.6 * u(rng), 1.0);
    // Slab test for the box.
    double t0 = 0.0, t1 = INFINITY;
    for (int a = 0; a < 3; ++a) {
      const double ta = (box.box_min[a] - o[a]) / d[a], tb = (box.box_max[a] - o[a]) / d[a];
      t0 = std::max(t0, std::min(ta, tb));
      t1 = std::min(t1, std::max(ta, tb));
    }
    const auto h = intersect(box, o, d);
    if (t0 <= t1) {
      REQUIRE(h);
      CHECK(std::abs(h->t - t0) <= 1e-6);
      ++hits;
    } else {
      CHECK_FALSE(h);
    }
    const Eigen::Vector3d n = tilted.axis_u.cross(tilted.axis_v);
    const double t = n.dot(tilted.center - o) / n.dot(d);
    const auto g = intersect(tilted, o, d);
    REQUIRE(g);
    CHECK(std::abs(g->t - t) <= 1e-6);
  }
  CHECK(hits > 100);
}

TEST_CASE("nearest primitive wins") {
  SceneSpec s = checker_plane(3.0, 0.1);
  s.primitives.push_back(Primitive::box({-0.1, -0.1, 1.0}, {0.1, 0.1, 1.2}, Texture::solid({0.2F, 0.9F, 0.4F})));
  const RgbdFrame f = render_scene(s, CameraModel::centered(11, 11, 10.0));
  CHECK(f.depth.at(0, 5, 5) == doctest::Approx(1.0));
  CHECK(f.rgb.at(1, 5, 5) == 0.9F);
  CHECK(f.depth.at(0, 0, 0) == doctest::Approx(3.0));
}

TEST_CASE("scene validation") {
  SceneSpec empty;
  CHECK_THROWS_AS(empty.validate(), InvariantError);
  SceneSpec s = checker_plane(2.0, 0.1);
  s.primitives[0].size.x() = 0.0;
  CHECK_THROWS_AS(s.validate(), InvariantError);
  s = checker_plane(2.0, 0.1);
  s.primitives.push_back(Primitive::box({0, 0, 1}, {1, 0, 2}, Texture{}));
  CHECK_THROWS_AS(s.validate(), InvariantError);
  s = checker_plane(2.0, 0.1);
  s.z_min_hint = 4.0;
  CHECK_THROWS_AS(s.validate(), InvariantError);
}

TEST_CASE("presets span half a meter to three meters") {
  for (const std::string& name : preset_names()) {
    const SceneSpec s = preset_scene(name);
    CHECK_NOTHROW(s.validate());
    if (name == "plane") continue;
    CHECK(s.z_min_hint == doctest::Approx(0.5));
    CHECK(s.z_max_hint == doctest::Approx(3.0));
  }
  CHECK_THROWS_AS(preset_scene("nope"), ArgumentError);
}

TEST_CASE("linear trajectory") {
  const CameraModel cam = default_camera(8, 8, 1.0);
  const Trajectory t = Trajectory::linear(cam, {1.0, 0, 0}, 11);
  CHECK(t.size() == 11);
  CHECK(t.poses[5].center.x() == doctest::Approx(0.5));
  CHECK(t.arc_length().back() == doctest::Approx(1.0));
  for (double s : t.spacing) CHECK(s == doctest::Approx(0.1));
  CHECK_NOTHROW(t.validate());
  Trajectory bad = t;
  bad.poses[3].f *= 2;
  CHECK_THROWS_AS(bad.validate(), InvariantError);
  CHECK_THROWS_AS(Trajectory::linear(cam, {1, 0, 0}, 0), ArgumentError);
  CHECK_THROWS_AS(Trajectory{}.validate(), InvariantError);
}

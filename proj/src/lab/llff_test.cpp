#include <doctest.h>

#include <cmath>

#include "lfcap/errors.hpp"
#include "lfcap/lab/llff.hpp"

using namespace lfcap;
using namespace lfcap::lab;

namespace {
const double kTheta = 45.93 * M_PI / 180.0;
}

TEST_CASE("plan with the phone capture constants") {
  const LlffPlan p = llff_plan(0.15, 294, 32, 0.5, kTheta);
  const double root = 0.15 * 294 / (2.0 * 32 * 0.5 * std::tan(kTheta / 2));
  CHECK(std::abs(p.N - root * root) <= 1e-9 * root * root);
  CHECK(p.N == doctest::Approx(10.58).epsilon(1e-3));
  CHECK(p.delta_u == doctest::Approx(0.0461).epsilon(1e-3));
  CHECK(p.delta_u * p.sqrt_n == 0.15);
  CHECK(p.grid_cols == 4);
  CHECK(p.grid_rows == 4);
  CHECK(p.poses.size() == 16);
}

TEST_CASE("grid geometry") {
  CameraModel base = CameraModel::centered(30, 20, 25.0);
  base = base.with_center({1.0, 2.0, 3.0});
  const LlffPlan p = llff_plan(0.15, 294, 32, 0.5, kTheta, GridRounding::square, &base);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const CameraModel& c : p.poses) {
    CHECK(c.same_intrinsics(base));
    CHECK(c.center.z() == doctest::Approx(3.0));
    mean += c.center;
  }
  mean /= static_cast<double>(p.poses.size());
  CHECK((mean - base.center).norm() < 1e-12);
  CHECK((p.poses[1].center - p.poses[0].center).norm() == doctest::Approx(p.delta_u));
  CHECK((p.poses[p.grid_cols].center - p.poses[0].center).norm() == doctest::Approx(p.delta_u));

  const LlffPlan total = llff_plan(0.15, 294, 32, 0.5, kTheta, GridRounding::total);
  CHECK(total.poses.size() == 11);
}

TEST_CASE("doubling z_min divides N by four") {
  const LlffPlan a = llff_plan(0.2, 300, 16, 0.4, 0.9);
  const LlffPlan b = llff_plan(0.2, 300, 16, 0.8, 0.9);
  CHECK(a.N / b.N == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("plan rejects non-positive inputs") {
  CHECK_THROWS_AS(llff_plan(0.0, 294, 32, 0.5, kTheta), ArgumentError);
  CHECK_THROWS_AS(llff_plan(0.15, 0, 32, 0.5, kTheta), ArgumentError);
  CHECK_THROWS_AS(llff_plan(0.15, 294, -1, 0.5, kTheta), ArgumentError);
  CHECK_THROWS_AS(llff_plan(0.15, 294, 32, 0.0, kTheta), ArgumentError);
  CHECK_THROWS_AS(llff_plan(0.15, 294, 32, 0.5, 0.0), ArgumentError);
  CHECK_THROWS_AS(llff_plan(0.15, 294, 32, 0.5, M_PI), ArgumentError);
}

TEST_CASE("plan json") {
  const auto j = plan_to_json(llff_plan(0.15, 294, 32, 0.5, kTheta));
  CHECK(j.at("N").get<double>() == doctest::Approx(10.5767).epsilon(1e-4));
  CHECK(j.at("centers").size() == 16);
}

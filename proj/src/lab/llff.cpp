#include "lfcap/lab/llff.hpp"

#include <cmath>
#include <numbers>

#include "lfcap/errors.hpp"

namespace lfcap::lab {

LlffPlan llff_plan(double S, int W, int D, double z_min, double theta, GridRounding rounding,
                   const CameraModel* base) {
  if (!(S > 0.0) || W <= 0 || D <= 0 || !(z_min > 0.0) || !(theta > 0.0) || !(theta < std::numbers::pi) ||
      !std::isfinite(S) || !std::isfinite(z_min)) {
    throw ArgumentError("llff_plan: S, W, D, z_min and theta must be positive (theta < pi)");
  }
  LlffPlan plan;
  plan.S = S;
  plan.W = W;
  plan.D = D;
  plan.z_min = z_min;
  plan.theta = theta;
  const double root = S * W / (2.0 * D * z_min * std::tan(theta / 2.0));
  plan.N = root * root;
  plan.sqrt_n = std::sqrt(plan.N);
  plan.delta_u = S / plan.sqrt_n;

  int count = 0;
  if (rounding == GridRounding::square) {
    plan.grid_cols = plan.grid_rows = static_cast<int>(std::ceil(plan.sqrt_n));
    count = plan.grid_cols * plan.grid_rows;
  } else {
    count = static_cast<int>(std::ceil(plan.N));
    plan.grid_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    plan.grid_rows = (count + plan.grid_cols - 1) / plan.grid_cols;
  }

  const CameraModel cam = base ? *base : CameraModel::from_fov(W, W, theta);
  const Eigen::Vector3d right = cam.rotation.col(0);
  const Eigen::Vector3d down = cam.rotation.col(1);
  for (int i = 0; i < count; ++i) {
    const int row = i / plan.grid_cols;
    const int col = i % plan.grid_cols;
    const double du = (col - (plan.grid_cols - 1) / 2.0) * plan.delta_u;
    const double dv = (row - (plan.grid_rows - 1) / 2.0) * plan.delta_u;
    plan.poses.push_back(cam.with_center(cam.center + du * right + dv * down));
  }
  return plan;
}

nlohmann::json plan_to_json(const LlffPlan& plan) {
  nlohmann::json poses = nlohmann::json::array();
  for (const CameraModel& c : plan.poses) poses.push_back({c.center.x(), c.center.y(), c.center.z()});
  return {{"S", plan.S},
          {"W", plan.W},
          {"D", plan.D},
          {"z_min", plan.z_min},
          {"theta", plan.theta},
          {"N", plan.N},
          {"delta_u", plan.delta_u},
          {"grid", {plan.grid_cols, plan.grid_rows}},
          {"centers", poses}};
}

}  // namespace lfcap::lab

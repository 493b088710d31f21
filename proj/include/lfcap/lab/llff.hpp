#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfcap/camera.hpp"

namespace lfcap::lab {

enum class GridRounding {
  square,  // ceil(sqrt(N)) x ceil(sqrt(N)) poses
  total,   // ceil(N) poses filled row by row
};

/// Plenoptic-sampling capture grid:
///   N = (S W / (2 D z_min tan(theta / 2)))^2,  delta_u = S / sqrt(N)
struct LlffPlan {
  double S = 0.0;
  int W = 0;
  int D = 0;
  double z_min = 0.0;
  double theta = 0.0;
  double N = 0.0;
  double sqrt_n = 0.0;
  double delta_u = 0.0;
  int grid_cols = 0;
  int grid_rows = 0;
  std::vector<CameraModel> poses;
};

/// Throws ArgumentError unless every input is positive and theta < pi.
/// Poses sit on the base camera's x-y plane, centered on its center and
/// spaced delta_u; they share its orientation and intrinsics.
LlffPlan llff_plan(double S, int W, int D, double z_min, double theta, GridRounding rounding = GridRounding::square,
                   const CameraModel* base = nullptr);

nlohmann::json plan_to_json(const LlffPlan& plan);

}  // namespace lfcap::lab

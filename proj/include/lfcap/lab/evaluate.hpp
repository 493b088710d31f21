#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfcap/lab/capture.hpp"
#include "lfcap/lab/policy.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::lab {

/// PSNR of identical images is infinite; per-view values are capped here
/// before averaging.
inline constexpr double kPsnrCap = 100.0;

struct EvalParams {
  int layers = 32;
  std::size_t k = 3;
  /// Worker threads for ground-truth views; 0 picks the hardware count.
  unsigned threads = 0;
};

struct PolicyScore {
  PolicyId policy = PolicyId::ours;
  std::size_t captures = 0;
  double psnr = 0.0;
  double ssim = 0.0;
  std::optional<double> psnr_ratio;  // to the OURS row
  std::optional<double> ssim_ratio;
  std::vector<double> view_psnr;
  std::vector<double> view_ssim;
};

struct EvalReport {
  std::vector<PolicyScore> rows;
  std::vector<CameraModel> ground_truth;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Midpoints between consecutive selections of a UNIFORM run: centers are
/// interpolated linearly, orientation is taken from the earlier pose.
std::vector<CameraModel> midpoint_poses(const scene::Trajectory& trajectory, std::span<const std::size_t> indices);

/// Renders every run's K-nearest blend at the ground-truth poses and scores
/// it against the oracle. Ground truth comes from the first UNIFORM run (or
/// a two-endpoint uniform selection when that run has fewer than two
/// views). Runs without captures are skipped with a note.
EvalReport evaluate(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, std::span<const PolicyRun> runs,
                    const EvalParams& params, CaptureCache* cache = nullptr);

}  // namespace lfcap::lab

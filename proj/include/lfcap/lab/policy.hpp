#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfcap/lab/capture.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::lab {

enum class PolicyId { ours, uniform, random };

const char* policy_name(PolicyId id);  // "OURS", "UNIFORM", "RANDOM"
/// Case-insensitive; throws ArgumentError on unknown names.
PolicyId parse_policy(const std::string& name);

inline constexpr double kDefaultCaptureThreshold = 0.0428;

struct OursParams {
  double threshold = kDefaultCaptureThreshold;  // capture when error_rate exceeds this
  double error_t = 0.4;                         // per-pixel L1 threshold
  int layers = 32;
  std::size_t k = 3;
};

struct PolicyRun {
  PolicyId policy = PolicyId::ours;
  std::vector<std::size_t> indices;  // strictly increasing trajectory indices
  std::optional<OursParams> ours;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  /// Error rate observed at every visited pose (OURS only). Before the
  /// first capture the rendering is empty, so pose 0 logs its error
  /// against black.
  std::vector<double> error_log;

  /// Throws InvariantError unless indices are strictly increasing and below
  /// `trajectory_size`.
  void validate(std::size_t trajectory_size) const;
};

/// Walks the trajectory; pose 0 is always captured, later poses are
/// captured when the K-nearest blend of the captures so far misses the
/// oracle view on more than `threshold` of its pixels.
PolicyRun policy_ours(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, const OursParams& params,
                      CaptureCache* cache = nullptr);

/// n indices including both endpoints whose consecutive arc-length gaps
/// have the least variance. n == 1 selects pose 0. Throws ArgumentError for
/// n == 0 or n > trajectory size.
PolicyRun policy_uniform(const scene::Trajectory& trajectory, std::size_t n);

/// n distinct indices drawn uniformly with a seeded generator, sorted.
PolicyRun policy_random(const scene::Trajectory& trajectory, std::size_t n, std::uint64_t seed);

nlohmann::json run_to_json(const PolicyRun& run);

}  // namespace lfcap::lab

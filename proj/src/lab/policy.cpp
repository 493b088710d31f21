#include "lfcap/lab/policy.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/blend.hpp"
#include "lfcap/mpi/overlay.hpp"

namespace lfcap::lab {

const char* policy_name(PolicyId id) {
  switch (id) {
    case PolicyId::ours:
      return "OURS";
    case PolicyId::uniform:
      return "UNIFORM";
    case PolicyId::random:
      return "RANDOM";
  }
  return "?";
}

PolicyId parse_policy(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  if (upper == "OURS") return PolicyId::ours;
  if (upper == "UNIFORM") return PolicyId::uniform;
  if (upper == "RANDOM") return PolicyId::random;
  throw ArgumentError("unknown policy '" + name + "' (expected ours, uniform or random)");
}

void PolicyRun::validate(std::size_t trajectory_size) const {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= trajectory_size) throw InvariantError("policy run: index out of trajectory bounds");
    if (i > 0 && indices[i] <= indices[i - 1]) throw InvariantError("policy run: indices must be strictly increasing");
  }
}

PolicyRun policy_ours(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, const OursParams& params,
                      CaptureCache* cache) {
  trajectory.validate();
  if (!(params.threshold >= 0.0)) throw ArgumentError("policy_ours: threshold must be >= 0");
  if (params.k == 0) throw ArgumentError("policy_ours: k must be >= 1");
  std::optional<CaptureCache> local;
  if (!cache) cache = &local.emplace(scene, trajectory, params.layers);
  if (cache->layers() != params.layers) throw ArgumentError("policy_ours: cache built for a different layer count");

  PolicyRun run;
  run.policy = PolicyId::ours;
  run.ours = params;

  std::vector<std::shared_ptr<const CapturedView>> captured;
  std::vector<const mpi::MpiVolume*> volumes;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const CameraModel& pose = trajectory.poses[i];
    const RgbdFrame oracle = scene::render_scene(scene, pose);
    const Image rendered =
        volumes.empty() ? Image(pose.width, pose.height, 3) : mpi::render_nearest(volumes, pose, params.k).view.color;
    const double rate = mpi::error_mask(rendered, oracle.rgb, params.error_t).rate;
    run.error_log.push_back(rate);
    if (volumes.empty() || rate > params.threshold) {
      captured.push_back(cache->get(i));
      volumes.push_back(captured.back()->volume.get());
      run.indices.push_back(i);
    }
  }
  run.count = run.indices.size();
  return run;
}

PolicyRun policy_uniform(const scene::Trajectory& trajectory, std::size_t n) {
  trajectory.validate();
  const std::size_t total = trajectory.size();
  if (n == 0 || n > total) throw ArgumentError("policy_uniform: n must be in [1, trajectory size]");
  PolicyRun run;
  run.policy = PolicyId::uniform;
  run.count = n;
  if (n == 1) {
    run.indices = {0};
    return run;
  }

  // Endpoints fixed; minimizes the sum of squared gaps.
  const std::vector<double> s = trajectory.arc_length();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // cost[j][i]: best sum of squares reaching pose i with pose i as the
  // j-th selection (0-based).
  std::vector<std::vector<double>> cost(n, std::vector<double>(total, inf));
  std::vector<std::vector<std::size_t>> prev(n, std::vector<std::size_t>(total, 0));
  cost[0][0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i < total; ++i) {
      for (std::size_t p = j - 1; p < i; ++p) {
        if (cost[j - 1][p] == inf) continue;
        const double gap = s[i] - s[p];
        const double c = cost[j - 1][p] + gap * gap;
        if (c < cost[j][i]) {
          cost[j][i] = c;
          prev[j][i] = p;
        }
      }
    }
  }
  run.indices.assign(n, 0);
  std::size_t at = total - 1;
  for (std::size_t j = n; j-- > 0;) {
    run.indices[j] = at;
    at = prev[j][at];
  }
  return run;
}

PolicyRun policy_random(const scene::Trajectory& trajectory, std::size_t n, std::uint64_t seed) {
  trajectory.validate();
  if (n == 0 || n > trajectory.size()) throw ArgumentError("policy_random: n must be in [1, trajectory size]");
  std::vector<std::size_t> all(trajectory.size());
  std::iota(all.begin(), all.end(), 0);
  PolicyRun run;
  run.policy = PolicyId::random;
  run.count = n;
  run.seed = seed;
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(run.indices), n, rng);
  std::sort(run.indices.begin(), run.indices.end());
  return run;
}

nlohmann::json run_to_json(const PolicyRun& run) {
  nlohmann::json j = {{"policy", policy_name(run.policy)}, {"indices", run.indices}, {"count", run.indices.size()}};
  if (run.policy == PolicyId::random) j["seed"] = run.seed;
  if (run.ours) {
    j["threshold"] = run.ours->threshold;
    j["t"] = run.ours->error_t;
    j["layers"] = run.ours->layers;
    j["k"] = run.ours->k;
    j["error_log"] = run.error_log;
  }
  return j;
}

}  // namespace lfcap::lab

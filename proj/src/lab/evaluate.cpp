#include "lfcap/lab/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "lfcap/errors.hpp"
#include "lfcap/lab/metrics.hpp"
#include "lfcap/mpi/blend.hpp"

namespace lfcap::lab {

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

std::vector<CameraModel> midpoint_poses(const scene::Trajectory& trajectory, std::span<const std::size_t> indices) {
  std::vector<CameraModel> out;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const CameraModel& a = trajectory.poses.at(indices[i - 1]);
    const CameraModel& b = trajectory.poses.at(indices[i]);
    out.push_back(a.with_center(0.5 * (a.center + b.center)));
  }
  return out;
}

EvalReport evaluate(const scene::SceneSpec& scene, const scene::Trajectory& trajectory, std::span<const PolicyRun> runs,
                    const EvalParams& params, CaptureCache* cache) {
  trajectory.validate();
  if (params.k == 0) throw ArgumentError("evaluate: k must be >= 1");
  if (trajectory.size() < 2) throw ArgumentError("evaluate: trajectory needs at least two poses");
  std::optional<CaptureCache> local;
  if (!cache) cache = &local.emplace(scene, trajectory, params.layers);
  if (cache->layers() != params.layers) throw ArgumentError("evaluate: cache built for a different layer count");

  EvalReport report;
  std::vector<std::size_t> gt_indices;
  for (const PolicyRun& run : runs) {
    run.validate(trajectory.size());
    if (run.policy == PolicyId::uniform && gt_indices.empty()) gt_indices = run.indices;
  }
  if (gt_indices.size() < 2) {
    gt_indices = policy_uniform(trajectory, 2).indices;
    report.notes.push_back("ground truth taken from the two trajectory endpoints (no UNIFORM run with >= 2 views)");
  }
  report.ground_truth = midpoint_poses(trajectory, gt_indices);

  std::vector<Image> oracle(report.ground_truth.size());
  parallel_for(oracle.size(), params.threads,
               [&](std::size_t v) { oracle[v] = scene::render_scene(scene, report.ground_truth[v]).rgb; });

  for (const PolicyRun& run : runs) {
    if (run.indices.empty()) {
      report.notes.push_back(std::string(policy_name(run.policy)) + " run has no captures and was skipped");
      continue;
    }
    std::vector<std::shared_ptr<const CapturedView>> views;
    std::vector<const mpi::MpiVolume*> volumes;
    for (std::size_t i : run.indices) {
      views.push_back(cache->get(i));
      volumes.push_back(views.back()->volume.get());
    }
    PolicyScore row;
    row.policy = run.policy;
    row.captures = run.indices.size();
    row.view_psnr.assign(oracle.size(), 0.0);
    row.view_ssim.assign(oracle.size(), 0.0);
    parallel_for(oracle.size(), params.threads, [&](std::size_t v) {
      const Image rendered = mpi::render_nearest(volumes, report.ground_truth[v], params.k).view.color;
      row.view_psnr[v] = std::min(psnr(rendered, oracle[v]), kPsnrCap);
      row.view_ssim[v] = ssim(rendered, oracle[v]);
    });
    row.psnr = mean(row.view_psnr);
    row.ssim = mean(row.view_ssim);
    report.rows.push_back(std::move(row));
  }

  const auto ours = std::find_if(report.rows.begin(), report.rows.end(),
                                 [](const PolicyScore& r) { return r.policy == PolicyId::ours; });
  if (ours == report.rows.end()) {
    report.notes.push_back("no OURS run; ratios omitted");
  } else {
    const double base_psnr = ours->psnr;
    const double base_ssim = ours->ssim;
    for (PolicyScore& row : report.rows) {
      row.psnr_ratio = row.psnr / base_psnr;
      row.ssim_ratio = row.ssim / base_ssim;
    }
  }
  return report;
}

nlohmann::json EvalReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const PolicyScore& r : rows) {
    rows_json.push_back({{"policy", policy_name(r.policy)},
                         {"captures", r.captures},
                         {"psnr", r.psnr},
                         {"ssim", r.ssim},
                         {"psnr_ratio", optional_json(r.psnr_ratio)},
                         {"ssim_ratio", optional_json(r.ssim_ratio)},
                         {"view_psnr", r.view_psnr},
                         {"view_ssim", r.view_ssim}});
  }
  nlohmann::json gt = nlohmann::json::array();
  for (const CameraModel& c : ground_truth) gt.push_back({c.center.x(), c.center.y(), c.center.z()});
  return {{"rows", rows_json}, {"ground_truth_centers", gt}, {"psnr_cap_db", kPsnrCap}, {"notes", notes}};
}

std::string EvalReport::to_table() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %8s %9s %7s %10s %10s\n", "policy", "captures", "PSNR", "SSIM", "PSNR/OURS",
                "SSIM/OURS");
  out += line;
  for (const PolicyScore& r : rows) {
    char pr[16] = "-";
    char sr[16] = "-";
    if (r.psnr_ratio) std::snprintf(pr, sizeof pr, "%.3f", *r.psnr_ratio);
    if (r.ssim_ratio) std::snprintf(sr, sizeof sr, "%.3f", *r.ssim_ratio);
    std::snprintf(line, sizeof line, "%-8s %8zu %9.3f %7.4f %10s %10s\n", policy_name(r.policy), r.captures, r.psnr,
                  r.ssim, pr, sr);
    out += line;
  }
  std::snprintf(line, sizeof line, "ground-truth views: %zu\n", ground_truth.size());
  out += line;
  for (const std::string& n : notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace lfcap::lab

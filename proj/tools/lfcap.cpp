// lfcap: scene generation, capture, rendering, planning, policy simulation
// and the capture-session server.

#include <CLI11.hpp>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfcap/errors.hpp"
#include "lfcap/lab/evaluate.hpp"
#include "lfcap/lab/export.hpp"
#include "lfcap/lab/llff.hpp"
#include "lfcap/lab/metrics.hpp"
#include "lfcap/lab/policy.hpp"
#include "lfcap/mpi/blend.hpp"
#include "lfcap/mpi/overlay.hpp"
#include "lfcap/scene/binning.hpp"
#include "lfcap/scene/formats.hpp"
#include "lfcap/scene/png_io.hpp"
#include "lfcap/service/protocol.hpp"
#include "lfcap/service/server.hpp"

namespace fs = std::filesystem;
using namespace lfcap;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIo = 3, kInvariant = 4 };

double deg(double d) { return d * std::numbers::pi / 180.0; }

struct SceneArgs {
  std::string file;
  std::string preset;

  void add(CLI::App* cmd) {
    cmd->add_option("--scene", file, "Scene JSON file");
    cmd->add_option("--preset", preset, "Built-in scene (plane, office, shelf, pillars)");
  }

  scene::SceneSpec load() const {
    if (file.empty() == preset.empty()) throw ArgumentError("give exactly one of --scene or --preset");
    if (!preset.empty()) return scene::preset_scene(preset);
    if (!fs::exists(file)) throw IoError("scene file not found: " + file);
    return scene::load_scene(file);
  }
};

struct CameraArgs {
  int width = 294;
  int height = 639;
  double fov_deg = 45.93;

  void add(CLI::App* cmd) {
    cmd->add_option("--width", width, "Image width in pixels")->check(CLI::PositiveNumber);
    cmd->add_option("--height", height, "Image height in pixels")->check(CLI::PositiveNumber);
    cmd->add_option("--fov-deg", fov_deg, "Horizontal field of view in degrees")->check(CLI::Range(0.1, 179.0));
  }

  CameraModel camera() const { return scene::default_camera(width, height, deg(fov_deg)); }
};

Eigen::Vector3d vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw ArgumentError(std::string(what) + " needs three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

// --pose FILE ({rotation, center}) or --center x,y,z over `base`.
struct PoseArgs {
  std::string pose_file;
  std::vector<double> center;

  void add(CLI::App* cmd) {
    cmd->add_option("--pose", pose_file, "Pose JSON file {rotation: [9], center: [3]}");
    cmd->add_option("--center", center, "Camera center x,y,z (identity orientation)")->delimiter(',');
  }

  std::optional<CameraModel> resolve(const CameraModel& base) const {
    if (!pose_file.empty() && !center.empty()) throw ArgumentError("give at most one of --pose or --center");
    if (!pose_file.empty()) return scene::pose_from_json(scene::read_json_file(pose_file), base);
    if (!center.empty()) return base.with_pose(Eigen::Matrix3d::Identity(), vec3(center, "--center"));
    return std::nullopt;
  }
};

void write_text(const fs::path& file, const std::string& text) {
  std::FILE* f = std::fopen(file.c_str(), "w");
  if (!f) throw IoError("cannot write " + file.string());
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw IoError("short write to " + file.string());
}

int cmd_scene(bool list, const std::string& preset, const std::string& out) {
  if (list) {
    for (const std::string& n : scene::preset_names()) std::cout << n << '\n';
    return kOk;
  }
  if (preset.empty() || out.empty()) throw ArgumentError("scene needs --preset and --out (or --list)");
  scene::save_scene(out, scene::preset_scene(preset));
  return kOk;
}

int cmd_trajectory(const CameraArgs& cam, const std::vector<double>& start, const std::vector<double>& end,
                   std::size_t count, const std::string& out) {
  const CameraModel base = cam.camera().with_center(vec3(start, "--start"));
  scene::save_trajectory(out, scene::Trajectory::linear(base, vec3(end, "--end"), count));
  return kOk;
}

int cmd_capture(const SceneArgs& sa, const CameraArgs& ca, const PoseArgs& pa, const std::string& trajectory,
                int index, int layers, const std::string& out) {
  const scene::SceneSpec spec = sa.load();
  CameraModel camera = ca.camera();
  if (!trajectory.empty()) {
    const scene::Trajectory traj = scene::load_trajectory(trajectory);
    if (index < 0 || static_cast<std::size_t>(index) >= traj.size()) throw ArgumentError("--index out of range");
    camera = traj.poses[index];
  } else if (auto p = pa.resolve(camera)) {
    camera = *p;
  }
  const lab::CapturedView view = lab::capture_view(spec, camera, layers);
  scene::save_frame(fs::path(out) / "frame", view.frame);
  scene::save_mpi(fs::path(out) / "mpi", *view.volume);
  json summary = {{"scale", view.scale.scale}, {"used_pixels", view.scale.used_pixels}, {"layers", layers}};
  if (view.scale.warning) summary["warning"] = *view.scale.warning;
  std::cout << summary.dump(2) << '\n';
  return kOk;
}

int cmd_build_mpi(const std::string& frame_dir, int layers, double z_near, double z_far, const std::string& out) {
  const RgbdFrame frame = scene::load_frame(frame_dir);
  scene::BinningStats stats;
  scene::save_mpi(out, scene::mpi_from_rgbd(frame, layers, z_near, z_far, &stats));
  std::cout << json({{"clamped", stats.clamped}, {"empty", stats.empty}}).dump(2) << '\n';
  return kOk;
}

int cmd_render(const std::vector<std::string>& mpi_dirs, const PoseArgs& pa, const std::string& mode_name,
               std::size_t k, double t, const SceneArgs& sa, const std::string& out) {
  const mpi::OverlayMode mode = mpi::parse_overlay_mode(mode_name);
  std::vector<mpi::MpiVolume> volumes;
  for (const std::string& d : mpi_dirs) volumes.push_back(scene::load_mpi(d));
  const CameraModel& ref = volumes.front().reference();
  const CameraModel target = pa.resolve(ref).value_or(ref);
  std::vector<const mpi::MpiVolume*> ptrs;
  for (const auto& v : volumes) ptrs.push_back(&v);
  const mpi::NearestRender nearest = mpi::render_nearest(ptrs, target, k);

  json report = {{"k", nearest.nearest.indices.size()}, {"indices", nearest.nearest.indices}};
  const bool have_scene = !sa.file.empty() || !sa.preset.empty();
  Image image;
  if (mode == mpi::OverlayMode::black_bg && !have_scene) {
    image = mpi::overlay_black(nearest.view);
  } else {
    if (!have_scene) throw ArgumentError("mode " + mode_name + " needs --scene or --preset for the video frame");
    const Image video = scene::render_scene(sa.load(), target).rgb;
    mpi::OverlayConfig config;
    config.mode = mode;
    config.threshold = t;
    image = mpi::apply_overlay(nearest.view, video, config);
    report["error_rate"] = mpi::error_mask(nearest.view.color, video, t).rate;
    const double p = lab::psnr(mpi::overlay_black(nearest.view), video);
    report["psnr"] = std::isfinite(p) ? json(p) : json("inf");
  }
  scene::write_png_rgb8(out, image);
  std::cout << report.dump(2) << '\n';
  return kOk;
}

int cmd_plan(double S, int W, int D, double z_min, double theta_deg, const std::string& grid, const std::string& out) {
  if (grid != "square" && grid != "total") throw ArgumentError("--grid must be square or total");
  const lab::LlffPlan plan = lab::llff_plan(S, W, D, z_min, deg(theta_deg),
                                            grid == "square" ? lab::GridRounding::square : lab::GridRounding::total);
  const json j = lab::plan_to_json(plan);
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    scene::write_json_file(out, j);
  }
  return kOk;
}

struct SimulateArgs {
  std::string trajectory;
  std::string policies = "all";
  double threshold = lab::kDefaultCaptureThreshold;
  std::uint64_t seed = 1;
  std::size_t k = 3;
  int layers = 32;
  double t = 0.4;
  unsigned threads = 0;
  bool no_export = false;
  std::string out;
};

int cmd_simulate(const SceneArgs& sa, const SimulateArgs& a) {
  const scene::SceneSpec spec = sa.load();
  if (!fs::exists(a.trajectory)) throw IoError("trajectory file not found: " + a.trajectory);
  const scene::Trajectory traj = scene::load_trajectory(a.trajectory);

  std::vector<lab::PolicyId> wanted;
  if (a.policies == "all") {
    wanted = {lab::PolicyId::ours, lab::PolicyId::uniform, lab::PolicyId::random};
  } else {
    std::stringstream ss(a.policies);
    for (std::string item; std::getline(ss, item, ',');) wanted.push_back(lab::parse_policy(item));
  }

  lab::CaptureCache cache(spec, traj, a.layers);
  lab::OursParams ours_params{a.threshold, a.t, a.layers, a.k};
  // OURS fixes the budget the other policies must match.
  const lab::PolicyRun ours = lab::policy_ours(spec, traj, ours_params, &cache);
  std::vector<lab::PolicyRun> runs;
  for (lab::PolicyId id : wanted) {
    switch (id) {
      case lab::PolicyId::ours:
        runs.push_back(ours);
        break;
      case lab::PolicyId::uniform:
        runs.push_back(lab::policy_uniform(traj, ours.indices.size()));
        break;
      case lab::PolicyId::random:
        runs.push_back(lab::policy_random(traj, ours.indices.size(), a.seed));
        break;
    }
  }
  const lab::EvalReport report = lab::evaluate(spec, traj, runs, {a.layers, a.k, a.threads}, &cache);

  const fs::path out(a.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());
  json j = report.to_json();
  j["runs"] = json::array();
  for (const auto& r : runs) j["runs"].push_back(lab::run_to_json(r));
  scene::write_json_file(out / "report.json", j);
  write_text(out / "report.txt", report.to_table());
  if (!a.no_export) {
    for (const auto& r : runs) {
      std::string name = lab::policy_name(r.policy);
      for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      lab::export_run(out / "exports" / name, r, cache);
    }
  }
  std::cout << report.to_table();
  return kOk;
}

int cmd_serve(const SceneArgs& sa, const CameraArgs& ca, const std::string& bind, const std::string& export_root,
              int layers, std::size_t k, double t, double threshold, double jitter) {
  service::ServerConfig config;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw ArgumentError("--bind must be host:port");
  config.address = bind.substr(0, colon);
  try {
    const int port = std::stoi(bind.substr(colon + 1));
    if (port < 0 || port > 65535) throw std::out_of_range("port");
    config.port = static_cast<std::uint16_t>(port);
  } catch (const std::logic_error&) {
    throw ArgumentError("--bind has an invalid port");
  }
  config.export_root = export_root;
  config.default_scene = sa.load();
  config.default_params.layers = layers;
  config.default_params.k = k;
  config.default_params.t = t;
  config.default_params.threshold = threshold;
  config.default_params.jitter_sigma = jitter;
  config.default_params.width = ca.width;
  config.default_params.height = ca.height;
  config.default_params.fov_x = deg(ca.fov_deg);

  // Server threads inherit the blocked mask; the signal is taken here.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Server server(config);
  server.start();
  std::cout << "listening on " << config.address << ':' << server.port() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Light-field capture toolkit"};
  app.require_subcommand(1);

  auto* scene_cmd = app.add_subcommand("scene", "Write a built-in scene as JSON");
  bool list = false;
  std::string preset;
  std::string scene_out;
  scene_cmd->add_flag("--list", list, "List built-in scenes");
  scene_cmd->add_option("--preset", preset, "Built-in scene name");
  scene_cmd->add_option("--out", scene_out, "Output JSON file");

  auto* traj_cmd = app.add_subcommand("trajectory", "Write a linear camera trajectory");
  CameraArgs traj_cam;
  traj_cam.add(traj_cmd);
  std::vector<double> start{0.0, 0.0, 0.0};
  std::vector<double> end;
  std::size_t count = 30;
  std::string traj_out;
  traj_cmd->add_option("--start", start, "Start center x,y,z")->delimiter(',');
  traj_cmd->add_option("--end", end, "End center x,y,z")->delimiter(',')->required();
  traj_cmd->add_option("--count", count, "Number of poses")->check(CLI::PositiveNumber);
  traj_cmd->add_option("--out", traj_out, "Output JSON file")->required();

  auto* capture_cmd = app.add_subcommand("capture", "Capture an RGBD frame and its metric MPI");
  SceneArgs cap_scene;
  CameraArgs cap_cam;
  PoseArgs cap_pose;
  std::string cap_traj;
  int cap_index = 0;
  int cap_layers = 32;
  std::string cap_out;
  cap_scene.add(capture_cmd);
  cap_cam.add(capture_cmd);
  cap_pose.add(capture_cmd);
  capture_cmd->add_option("--trajectory", cap_traj, "Take the pose from a trajectory file");
  capture_cmd->add_option("--index", cap_index, "Pose index in --trajectory");
  capture_cmd->add_option("--layers", cap_layers, "MPI layer count")->check(CLI::Range(2, 1024));
  capture_cmd->add_option("--out", cap_out, "Output directory (frame/ and mpi/)")->required();

  auto* build_cmd = app.add_subcommand("build-mpi", "Build a depth-binned MPI from a saved frame");
  std::string build_frame;
  int build_layers = 32;
  double z_near = 0.5;
  double z_far = 3.0;
  std::string build_out;
  build_cmd->add_option("--frame", build_frame, "Frame directory")->required();
  build_cmd->add_option("--layers", build_layers, "MPI layer count")->check(CLI::Range(2, 1024));
  build_cmd->add_option("--z-near", z_near, "Nearest plane depth (m)");
  build_cmd->add_option("--z-far", z_far, "Farthest plane depth (m)");
  build_cmd->add_option("--out", build_out, "Output MPI directory")->required();

  auto* render_cmd = app.add_subcommand("render", "Render (and overlay) MPIs at a pose");
  std::vector<std::string> mpi_dirs;
  PoseArgs render_pose;
  SceneArgs render_scene;
  std::string mode = "BLACK_BG";
  std::size_t render_k = 3;
  double render_t = 0.4;
  std::string render_out;
  render_cmd->add_option("--mpi", mpi_dirs, "MPI directory (repeatable)")->required();
  render_pose.add(render_cmd);
  render_scene.add(render_cmd);
  render_cmd->add_option("--mode", mode, "RAW, BLACK_BG, ERROR_ON_VIDEO or ERROR_ON_MPI");
  render_cmd->add_option("--k", render_k, "Nearest volumes to blend")->check(CLI::PositiveNumber);
  render_cmd->add_option("--t", render_t, "Per-pixel L1 error threshold")->check(CLI::PositiveNumber);
  render_cmd->add_option("--out", render_out, "Output PNG")->required();

  auto* plan_cmd = app.add_subcommand("plan", "Plenoptic-sampling capture grid");
  double S = 0.15;
  int W = 294;
  int D = 32;
  double z_min = 0.5;
  double theta = 45.93;
  std::string grid = "square";
  std::string plan_out;
  plan_cmd->add_option("--S", S, "Capture-area side (m)");
  plan_cmd->add_option("--W", W, "Image width (px)");
  plan_cmd->add_option("--D", D, "Layer count");
  plan_cmd->add_option("--z-min", z_min, "Minimum scene depth (m)");
  plan_cmd->add_option("--theta-deg", theta, "Horizontal field of view (degrees)");
  plan_cmd->add_option("--grid", grid, "square or total");
  plan_cmd->add_option("--out", plan_out, "Output JSON (default stdout)");

  auto* sim_cmd = app.add_subcommand("simulate", "Run capture policies and evaluate them");
  SceneArgs sim_scene;
  SimulateArgs sim;
  sim_scene.add(sim_cmd);
  sim_cmd->add_option("--trajectory", sim.trajectory, "Trajectory JSON file")->required();
  sim_cmd->add_option("--policy", sim.policies, "all or a comma list of ours,uniform,random");
  sim_cmd->add_option("--threshold", sim.threshold, "OURS capture threshold on the error rate");
  sim_cmd->add_option("--seed", sim.seed, "RANDOM seed");
  sim_cmd->add_option("--k", sim.k, "Nearest volumes to blend")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--layers", sim.layers, "MPI layer count")->check(CLI::Range(2, 1024));
  sim_cmd->add_option("--t", sim.t, "Per-pixel L1 error threshold")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim.threads, "Evaluation threads (0 = all cores)");
  sim_cmd->add_flag("--no-export", sim.no_export, "Skip writing per-policy capture sets");
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Run the capture-session service");
  SceneArgs serve_scene;
  CameraArgs serve_cam;
  std::string bind = "127.0.0.1:8080";
  std::string export_root = "exports";
  int serve_layers = 32;
  std::size_t serve_k = 3;
  double serve_t = 0.4;
  double serve_threshold = lab::kDefaultCaptureThreshold;
  double jitter = 0.0;
  serve_scene.add(serve_cmd);
  serve_cam.add(serve_cmd);
  serve_cmd->add_option("--bind", bind, "host:port");
  serve_cmd->add_option("--export-root", export_root, "Directory for session exports");
  serve_cmd->add_option("--layers", serve_layers, "MPI layer count")->check(CLI::Range(2, 1024));
  serve_cmd->add_option("--k", serve_k, "Nearest volumes to blend")->check(CLI::PositiveNumber);
  serve_cmd->add_option("--t", serve_t, "Per-pixel L1 error threshold")->check(CLI::PositiveNumber);
  serve_cmd->add_option("--threshold", serve_threshold, "Capture threshold on the error rate");
  serve_cmd->add_option("--jitter", jitter, "Std. dev. of simulated tracking error (m)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*scene_cmd) return cmd_scene(list, preset, scene_out);
    if (*traj_cmd) return cmd_trajectory(traj_cam, start, end, count, traj_out);
    if (*capture_cmd) return cmd_capture(cap_scene, cap_cam, cap_pose, cap_traj, cap_index, cap_layers, cap_out);
    if (*build_cmd) return cmd_build_mpi(build_frame, build_layers, z_near, z_far, build_out);
    if (*render_cmd) return cmd_render(mpi_dirs, render_pose, mode, render_k, render_t, render_scene, render_out);
    if (*plan_cmd) return cmd_plan(S, W, D, z_min, theta, grid, plan_out);
    if (*sim_cmd) return cmd_simulate(sim_scene, sim);
    if (*serve_cmd) {
      return cmd_serve(serve_scene, serve_cam, bind, export_root, serve_layers, serve_k, serve_t, serve_threshold,
                       jitter);
    }
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}

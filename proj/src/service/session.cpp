#include "lfcap/service/session.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <random>

#include "lfcap/errors.hpp"
#include "lfcap/mpi/blend.hpp"
#include "lfcap/mpi/overlay.hpp"
#include "lfcap/scene/formats.hpp"

namespace lfcap::service {

namespace {

// FNV-1a over the pose; seeds the jitter.
std::uint64_t pose_seed(const CameraModel& pose) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](double v) {
    unsigned char bytes[sizeof v];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  };
  for (int i = 0; i < 9; ++i) mix(pose.rotation(i / 3, i % 3));
  for (int i = 0; i < 3; ++i) mix(pose.center[i]);
  return h;
}

class Guard {
 public:
  explicit Guard(FifoLock& lock) : lock_(lock) { lock_.lock(); }
  ~Guard() { lock_.unlock(); }
  Guard(const Guard&) = delete;
  Guard& operator=(const Guard&) = delete;

 private:
  FifoLock& lock_;
};

}  // namespace

const char* state_name(SessionState s) {
  switch (s) {
    case SessionState::empty:
      return "EMPTY";
    case SessionState::active:
      return "ACTIVE";
    case SessionState::exported:
      return "EXPORTED";
  }
  return "?";
}

void SessionParams::validate() const {
  if (layers < 2) throw ArgumentError("session: layers must be >= 2");
  if (k == 0) throw ArgumentError("session: k must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw ArgumentError("session: t must be > 0");
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) throw ArgumentError("session: threshold must be >= 0");
  if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma)) throw ArgumentError("session: jitter must be >= 0");
  if (width <= 0 || height <= 0) throw ArgumentError("session: resolution must be positive");
  if (!(fov_x > 0.0 && fov_x < M_PI)) throw ArgumentError("session: fov must be in (0, pi)");
}

CameraModel SessionParams::intrinsics() const { return CameraModel::from_fov(width, height, fov_x); }

nlohmann::json params_to_json(const SessionParams& p) {
  return {{"layers", p.layers},     {"k", p.k},       {"t", p.t},           {"threshold", p.threshold},
          {"jitter", p.jitter_sigma}, {"width", p.width}, {"height", p.height}, {"fov_deg", p.fov_x * 180.0 / M_PI}};
}

void FifoLock::lock() {
  std::unique_lock lock(mutex_);
  const std::uint64_t ticket = next_ticket_++;
  cv_.wait(lock, [&] { return serving_ == ticket; });
}

void FifoLock::unlock() {
  {
    std::lock_guard lock(mutex_);
    ++serving_;
  }
  cv_.notify_all();
}

CaptureSession::CaptureSession(std::string id, scene::SceneSpec scene, SessionParams params)
    : id_(std::move(id)), scene_(std::move(scene)), params_(params) {
  scene_.validate();
  params_.validate();
}

SessionState CaptureSession::state() {
  Guard g(lock_);
  return state_;
}

std::size_t CaptureSession::capture_count() {
  Guard g(lock_);
  return captures_.size();
}

Image CaptureSession::video_frame(const CameraModel& pose) const {
  CameraModel seen = pose;
  if (params_.jitter_sigma > 0.0) {
    std::mt19937_64 rng(pose_seed(pose));
    std::normal_distribution<double> noise(0.0, params_.jitter_sigma);
    for (int i = 0; i < 3; ++i) seen.center[i] += noise(rng);
  }
  return scene::render_scene(scene_, seen).rgb;
}

double CaptureSession::error_rate_locked(const CameraModel& pose, double t, mpi::RenderedView* view,
                                         Image* video) const {
  Image vid = video_frame(pose);
  double rate = 0.0;
  if (captures_.empty()) {
    rate = mpi::error_mask(Image(pose.width, pose.height, 3), vid, t).rate;
  } else {
    std::vector<const mpi::MpiVolume*> volumes;
    for (const lab::CapturedView& c : captures_) volumes.push_back(c.volume.get());
    mpi::NearestRender blend = mpi::render_nearest(volumes, pose, params_.k);
    rate = mpi::error_mask(blend.view.color, vid, t).rate;
    if (view) *view = std::move(blend.view);
  }
  if (video) *video = std::move(vid);
  return rate;
}

FrameResult CaptureSession::request_frame(const CameraModel& pose, mpi::OverlayMode mode, std::optional<double> t) {
  pose.validate();
  if (!pose.same_intrinsics(params_.intrinsics())) throw ArgumentError("request_frame: pose intrinsics differ");
  const double threshold = t.value_or(params_.t);
  if (!(threshold > 0.0) || !std::isfinite(threshold)) throw ArgumentError("request_frame: t must be > 0");

  Guard g(lock_);
  FrameResult out;
  mpi::RenderedView view;
  Image video;
  out.error_rate = error_rate_locked(pose, threshold, &view, &video);
  out.capture_count = captures_.size();
  if (captures_.empty()) {
    out.no_mpi = true;
    out.image = std::move(video);
    return out;
  }
  mpi::OverlayConfig config;
  config.mode = mode;
  config.threshold = threshold;
  out.image = mpi::apply_overlay(view, video, config);
  return out;
}

CaptureResult CaptureSession::capture(const CameraModel& pose) {
  pose.validate();
  if (!pose.same_intrinsics(params_.intrinsics())) throw ArgumentError("capture: pose intrinsics differ");
  Guard g(lock_);
  if (state_ == SessionState::exported) throw LifecycleError("capture: session " + id_ + " is already exported");

  const double before = error_rate_locked(pose, params_.t, nullptr, nullptr);
  lab::CapturedView view = lab::capture_view(scene_, pose, params_.layers);
  const double now =
      std::chrono::duration<double>(std::chrono::system_clock::now().time_since_epoch()).count();
  log_.push_back({pose, now, before, view.scale.scale});
  captures_.push_back(std::move(view));
  state_ = SessionState::active;
  return {captures_.size(), before, log_.back().scale, state_};
}

nlohmann::json CaptureSession::export_to(const std::filesystem::path& dir) {
  Guard g(lock_);
  if (state_ == SessionState::empty) throw LifecycleError("export: session " + id_ + " has no captures");
  if (state_ == SessionState::exported) throw LifecycleError("export: session " + id_ + " is already exported");

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  nlohmann::json captures = nlohmann::json::array();
  for (std::size_t i = 0; i < captures_.size(); ++i) {
    const std::string frame_dir = "frames/frame_" + std::to_string(i);
    const std::string mpi_dir = "mpis/mpi_" + std::to_string(i);
    scene::save_frame(dir / frame_dir, captures_[i].frame);
    scene::save_mpi(dir / mpi_dir, *captures_[i].volume);
    captures.push_back({{"pose", scene::pose_to_json(log_[i].pose)},
                        {"timestamp", log_[i].timestamp},
                        {"error_rate", log_[i].error_rate},
                        {"scale", log_[i].scale},
                        {"frame", frame_dir},
                        {"mpi", mpi_dir}});
  }
  nlohmann::json manifest = {{"format", "lfcap-session"},
                             {"version", 1},
                             {"id", id_},
                             {"params", params_to_json(params_)},
                             {"intrinsics", scene::camera_to_json(params_.intrinsics())},
                             {"scene", scene::scene_to_json(scene_)},
                             {"captures", captures}};
  scene::write_json_file(dir / "session.json", manifest);
  state_ = SessionState::exported;
  manifest["path"] = dir.string();
  return manifest;
}

nlohmann::json CaptureSession::state_json() {
  Guard g(lock_);
  nlohmann::json log = nlohmann::json::array();
  for (const CaptureLogEntry& e : log_) {
    log.push_back({{"pose", scene::pose_to_json(e.pose)},
                   {"timestamp", e.timestamp},
                   {"error_rate", e.error_rate},
                   {"scale", e.scale}});
  }
  return {{"id", id_},
          {"state", state_name(state_)},
          {"capture_count", captures_.size()},
          {"params", params_to_json(params_)},
          {"log", log}};
}

}  // namespace lfcap::service

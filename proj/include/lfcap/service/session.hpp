#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lfcap/camera.hpp"
#include "lfcap/lab/capture.hpp"
#include "lfcap/mpi/types.hpp"
#include "lfcap/scene/scene.hpp"

namespace lfcap::service {

enum class SessionState { empty, active, exported };
const char* state_name(SessionState s);  // "EMPTY", "ACTIVE", "EXPORTED"

struct SessionParams {
  int layers = mpi::kDefaultLayers;
  std::size_t k = mpi::kDefaultNearest;
  double t = mpi::kDefaultErrorThreshold;
  double threshold = 0.0428;
  /// Standard deviation (meters) of the Gaussian offset applied to the
  /// camera center of the simulated video frame.
  double jitter_sigma = 0.0;
  int width = 294;
  int height = 639;
  double fov_x = 0.8016;  // ~45.93 degrees

  /// Throws ArgumentError on out-of-range values.
  void validate() const;
  CameraModel intrinsics() const;
};

nlohmann::json params_to_json(const SessionParams& p);

struct CaptureLogEntry {
  CameraModel pose;
  double timestamp = 0.0;   // seconds since the Unix epoch
  double error_rate = 0.0;  // at the pose, before the capture
  double scale = 1.0;       // metric scale applied to the new volume
};

struct FrameResult {
  Image image;
  double error_rate = 0.0;
  std::size_t capture_count = 0;
  bool no_mpi = false;
};

struct CaptureResult {
  std::size_t capture_count = 0;
  double error_rate_before = 0.0;
  double scale = 1.0;
  SessionState state = SessionState::empty;
};

/// Serializes callers in arrival order.
class FifoLock {
 public:
  void lock();
  void unlock();

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  std::uint64_t next_ticket_ = 0;
  std::uint64_t serving_ = 0;
};

/// One user-in-the-loop capture session. Every public call runs under the
/// session's FIFO lock.
class CaptureSession {
 public:
  CaptureSession(std::string id, scene::SceneSpec scene, SessionParams params);

  const std::string& id() const { return id_; }
  const SessionParams& params() const { return params_; }
  SessionState state();
  std::size_t capture_count();

  /// Renders the K-nearest blend at `pose` and applies `mode`. The video
  /// frame is the oracle view (optionally jittered). Before the first
  /// capture the oracle view is returned with no_mpi set and the error rate
  /// is measured against black. Does not modify the session.
  FrameResult request_frame(const CameraModel& pose, mpi::OverlayMode mode, std::optional<double> t = std::nullopt);

  /// Captures the oracle view at `pose` and registers its metric MPI.
  /// Throws LifecycleError on an exported session.
  CaptureResult capture(const CameraModel& pose);

  /// Writes frames, MPIs and the capture log under `dir`; the session
  /// becomes EXPORTED. Throws LifecycleError unless ACTIVE.
  nlohmann::json export_to(const std::filesystem::path& dir);

  nlohmann::json state_json();

 private:
  double error_rate_locked(const CameraModel& pose, double t, mpi::RenderedView* view, Image* video) const;
  Image video_frame(const CameraModel& pose) const;

  std::string id_;
  scene::SceneSpec scene_;
  SessionParams params_;
  FifoLock lock_;
  SessionState state_ = SessionState::empty;
  std::vector<lab::CapturedView> captures_;
  std::vector<CaptureLogEntry> log_;
};

}  // namespace lfcap::service

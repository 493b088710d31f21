#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "lfcap/service/session.hpp"

namespace lfcap::service {

class SessionRegistry {
 public:
  /// Validates the scene and parameters and returns the new session. Ids
  /// are never reused.
  std::shared_ptr<CaptureSession> create(scene::SceneSpec scene, SessionParams params);

  /// Throws NotFoundError for unknown ids.
  std::shared_ptr<CaptureSession> get(const std::string& id) const;

  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::uint64_t next_id_ = 1;
  std::map<std::string, std::shared_ptr<CaptureSession>> sessions_;
};

}  // namespace lfcap::service

#include "lfcap/service/registry.hpp"

#include "lfcap/errors.hpp"

namespace lfcap::service {

std::shared_ptr<CaptureSession> SessionRegistry::create(scene::SceneSpec scene, SessionParams params) {
  std::unique_lock lock(mutex_);
  const std::string id = "s" + std::to_string(next_id_++);
  lock.unlock();
  auto session = std::make_shared<CaptureSession>(id, std::move(scene), params);
  lock.lock();
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<CaptureSession> SessionRegistry::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

std::size_t SessionRegistry::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace lfcap::service

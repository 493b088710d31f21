#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "lfcap/scene/scene.hpp"
#include "lfcap/service/registry.hpp"

namespace lfcap::service {

struct ServerConfig {
  std::string address = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 picks a free port
  std::filesystem::path export_root = "exports";
  /// Scene for sessions created without one.
  std::optional<scene::SceneSpec> default_scene;
  SessionParams default_params;
};

/// HTTP + WebSocket front end over a session registry.
///
///   GET  /health
///   POST /sessions                 create, returns state JSON
///   GET  /sessions/{id}            state JSON
///   POST /sessions/{id}/capture    body {pose}
///   POST /sessions/{id}/export     writes to <export_root>/<id>
///   POST /sessions/{id}/frame      body as a stream request, replies PNG
///   WS   /sessions/{id}/stream     per request: JSON header, then PNG
class Server {
 public:
  explicit Server(ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts accepting in the background. Throws IoError when the
  /// address cannot be bound.
  void start();
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();
  std::uint16_t port() const;

  SessionRegistry& registry() { return registry_; }

 private:
  struct Impl;
  ServerConfig config_;
  SessionRegistry registry_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lfcap::service

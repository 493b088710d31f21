#include "lfcap/service/server.hpp"

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <condition_variable>
#include <list>
#include <mutex>
#include <thread>

#include "lfcap/errors.hpp"
#include "lfcap/scene/png_io.hpp"
#include "lfcap/service/protocol.hpp"

namespace lfcap::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

Response json_response(const Request& req, http::status status, const json& body) {
  Response res(status, req.version());
  res.set(http::field::content_type, "application/json");
  res.keep_alive(req.keep_alive());
  res.body() = body.dump();
  res.prepare_payload();
  return res;
}

http::status status_for(const std::exception& e) {
  if (dynamic_cast<const NotFoundError*>(&e)) return http::status::not_found;
  if (dynamic_cast<const LifecycleError*>(&e)) return http::status::conflict;
  if (dynamic_cast<const ArgumentError*>(&e) || dynamic_cast<const DimensionError*>(&e)) {
    return http::status::bad_request;
  }
  if (dynamic_cast<const InvariantError*>(&e) || dynamic_cast<const ScaleError*>(&e)) {
    return http::status::unprocessable_entity;
  }
  return http::status::internal_server_error;
}

std::vector<std::string> path_parts(beast::string_view target) {
  std::string path(target);
  if (const auto q = path.find('?'); q != std::string::npos) path.resize(q);
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t end = path.find('/', start);
    const std::string part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

json parse_body(const Request& req) {
  if (req.body().empty()) return json::object();
  try {
    return json::parse(req.body());
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed JSON: ") + e.what());
  }
}

void shutdown_fd(int fd) {
  if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
}

}  // namespace

struct Server::Impl {
  struct Connection {
    std::thread thread;
    std::shared_ptr<tcp::socket> socket;
    std::shared_ptr<std::atomic<bool>> done;
  };

  Server& owner;
  asio::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::thread accept_thread;
  std::atomic<bool> running{false};
  std::uint16_t bound_port = 0;

  std::mutex mutex;
  std::condition_variable stopped_cv;
  bool stopped = false;
  std::list<Connection> connections;

  explicit Impl(Server& s) : owner(s) {}

  void reap_finished() {
    for (auto it = connections.begin(); it != connections.end();) {
      if (*it->done) {
        it->thread.join();
        it = connections.erase(it);
      } else {
        ++it;
      }
    }
  }

  void accept_loop() {
    while (running) {
      auto socket = std::make_shared<tcp::socket>(ioc);
      beast::error_code ec;
      acceptor.accept(*socket, ec);
      if (ec) {
        if (!running) break;
        continue;
      }
      std::lock_guard lock(mutex);
      if (!running) break;
      reap_finished();
      auto done = std::make_shared<std::atomic<bool>>(false);
      connections.push_back({std::thread([this, socket, done] {
                               serve(*socket);
                               *done = true;
                             }),
                             socket, done});
    }
  }

  void serve(tcp::socket& socket) {
    beast::flat_buffer buffer;
    beast::error_code ec;
    while (running) {
      http::request_parser<http::string_body> parser;
      parser.body_limit(16 * 1024 * 1024);
      http::read(socket, buffer, parser, ec);
      if (ec) break;
      Request req = parser.release();
      if (websocket::is_upgrade(req)) {
        stream(socket, req);
        return;
      }
      Response res = handle(req);
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

  Response handle(const Request& req) {
    try {
      return route(req);
    } catch (const std::exception& e) {
      return json_response(req, status_for(e), {{"error", e.what()}});
    }
  }

  Response route(const Request& req) {
    const auto parts = path_parts(req.target());
    const auto method = req.method();
    if (parts.size() == 1 && parts[0] == "health" && method == http::verb::get) {
      return json_response(req, http::status::ok, {{"status", "ok"}});
    }
    if (parts.empty() || parts[0] != "sessions") {
      return json_response(req, http::status::not_found, {{"error", "no such endpoint"}});
    }
    if (parts.size() == 1 && method == http::verb::post) {
      CreateRequest create = parse_create_request(req.body(), owner.config_.default_params);
      if (!create.scene) {
        if (!owner.config_.default_scene) throw ArgumentError("no scene given and the server has no default scene");
        create.scene = owner.config_.default_scene;
      }
      auto session = owner.registry_.create(std::move(*create.scene), create.params);
      return json_response(req, http::status::created, session->state_json());
    }
    if (parts.size() < 2) return json_response(req, http::status::method_not_allowed, {{"error", "bad method"}});
    auto session = owner.registry_.get(parts[1]);
    if (parts.size() == 2 && method == http::verb::get) {
      return json_response(req, http::status::ok, session->state_json());
    }
    if (parts.size() == 3 && method == http::verb::post) {
      if (parts[2] == "capture") {
        const json body = parse_body(req);
        if (!body.contains("pose")) throw ArgumentError("capture needs a 'pose'");
        const CameraModel pose = parse_pose(body.at("pose"), session->params().intrinsics());
        return json_response(req, http::status::ok, capture_json(session->capture(pose)));
      }
      if (parts[2] == "export") {
        return json_response(req, http::status::ok, session->export_to(owner.config_.export_root / session->id()));
      }
      if (parts[2] == "frame") {
        const FrameRequest fr = parse_frame_request(parse_body(req), session->params().intrinsics());
        const FrameResult frame = session->request_frame(fr.pose, fr.mode, fr.t);
        const std::vector<std::uint8_t> png = scene::encode_png_rgb8(frame.image);
        Response res(http::status::ok, req.version());
        res.set(http::field::content_type, "image/png");
        res.set("X-Error-Rate", std::to_string(frame.error_rate));
        res.set("X-Capture-Count", std::to_string(frame.capture_count));
        res.keep_alive(req.keep_alive());
        res.body().assign(png.begin(), png.end());
        res.prepare_payload();
        return res;
      }
    }
    return json_response(req, http::status::not_found, {{"error", "no such endpoint"}});
  }

  void stream(tcp::socket& socket, const Request& req) {
    beast::error_code ec;
    const auto parts = path_parts(req.target());
    std::shared_ptr<CaptureSession> session;
    try {
      if (parts.size() != 3 || parts[0] != "sessions" || parts[2] != "stream") throw NotFoundError("no such stream");
      session = owner.registry_.get(parts[1]);
    } catch (const std::exception& e) {
      Response res = json_response(req, status_for(e), {{"error", e.what()}});
      res.keep_alive(false);
      http::write(socket, res, ec);
      return;
    }

    websocket::stream<tcp::socket&> ws(socket);
    ws.accept(req, ec);
    if (ec) return;
    const CameraModel intrinsics = session->params().intrinsics();
    beast::flat_buffer buffer;
    while (running) {
      buffer.clear();
      ws.read(buffer, ec);
      if (ec) break;
      const std::string text = beast::buffers_to_string(buffer.data());
      json header;
      std::vector<std::uint8_t> png;
      try {
        const FrameRequest fr = parse_frame_request(text, intrinsics);
        const FrameResult frame = session->request_frame(fr.pose, fr.mode, fr.t);
        png = scene::encode_png_rgb8(frame.image);
        header = frame_header(frame, png.size());
      } catch (const std::exception& e) {
        ws.text(true);
        ws.write(asio::buffer(json({{"error", e.what()}}).dump()), ec);
        if (ec) break;
        continue;
      }
      ws.text(true);
      ws.write(asio::buffer(header.dump()), ec);
      if (ec) break;
      ws.binary(true);
      ws.write(asio::buffer(png), ec);
      if (ec) break;
    }
    if (ws.is_open()) ws.close(websocket::close_code::going_away, ec);
  }
};

Server::Server(ServerConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>(*this)) {}

Server::~Server() { stop(); }

void Server::start() {
  if (impl_->running) return;
  config_.default_params.validate();
  beast::error_code ec;
  const auto address = asio::ip::make_address(config_.address, ec);
  if (ec) throw ArgumentError("invalid bind address '" + config_.address + "'");
  const tcp::endpoint endpoint(address, config_.port);
  auto& acceptor = impl_->acceptor;
  acceptor.open(endpoint.protocol(), ec);
  if (!ec) acceptor.set_option(asio::socket_base::reuse_address(true), ec);
  if (!ec) acceptor.bind(endpoint, ec);
  if (!ec) acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) {
    beast::error_code ignored;
    acceptor.close(ignored);
    throw IoError("cannot listen on " + config_.address + ":" + std::to_string(config_.port) + ": " + ec.message());
  }
  impl_->bound_port = acceptor.local_endpoint().port();
  impl_->running = true;
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stopped = false;
  }
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

void Server::stop() {
  if (!impl_->running.exchange(false)) return;
  shutdown_fd(impl_->acceptor.native_handle());
  if (impl_->accept_thread.joinable()) impl_->accept_thread.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);

  std::list<Impl::Connection> connections;
  {
    std::lock_guard lock(impl_->mutex);
    connections.swap(impl_->connections);
    for (auto& c : connections) shutdown_fd(c.socket->native_handle());
  }
  for (auto& c : connections) c.thread.join();
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stopped = true;
  }
  impl_->stopped_cv.notify_all();
}

void Server::wait() {
  std::unique_lock lock(impl_->mutex);
  impl_->stopped_cv.wait(lock, [&] { return impl_->stopped || !impl_->running; });
}

std::uint16_t Server::port() const { return impl_->bound_port; }

}  // namespace lfcap::service

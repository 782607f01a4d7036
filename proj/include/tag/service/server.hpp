#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <thread>

#include "tag/service/session.hpp"

namespace httplib {
class Server;
}

namespace tag {

struct ServiceOptions {
  SessionOptions session;
  /// Served under `/` when set (e.g. a built web client).
  std::filesystem::path static_dir;
  /// Event streams send a comment line after this much silence.
  std::chrono::milliseconds keepalive{15000};
};

/// HTTP front end for a SessionManager:
///   POST /sessions, GET /sessions, GET /sessions/{id}/observation?seat=,
///   POST /sessions/{id}/action, GET /sessions/{id}/events (server-sent events),
///   GET /schema.
class PlayServer {
 public:
  PlayServer(const GameRegistry& games, ServiceOptions options = {});
  ~PlayServer();

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// bind() plus listen() on a background thread. Returns the port.
  int start(const std::string& host, int port);
  void stop();

  SessionManager& sessions() { return sessions_; }

 private:
  void install_routes();

  ServiceOptions options_;
  SessionManager sessions_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace tag

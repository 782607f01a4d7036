#include "tag/service/server.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "tag/core/errors.hpp"
#include "tag/core/json_loader.hpp"

namespace tag {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message,
                nlohmann::json extra = nlohmann::json::object()) {
  extra["error"] = code;
  extra["message"] = message;
  send_json(res, status, extra);
}

int http_status(SubmitStatus s) {
  switch (s) {
    case SubmitStatus::kAccepted: return 200;
    case SubmitStatus::kNotYourTurn:
    case SubmitStatus::kStale:
    case SubmitStatus::kGameOver: return 409;
    case SubmitStatus::kUnknownAction: return 400;
    case SubmitStatus::kUnauthorized: return 403;
  }
  return 500;
}

std::string sse_frame(const EventFrame& f) { return "event: " + f.type + "\ndata: " + f.to_json().dump() + "\n\n"; }

}  // namespace

PlayServer::PlayServer(const GameRegistry& games, ServiceOptions options)
    : options_(std::move(options)), sessions_(games, options_.session), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

PlayServer::~PlayServer() { stop(); }

void PlayServer::install_routes() {
  auto& svr = *server_;
  svr.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  svr.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      return send_error(res, 400, "bad-request", std::string("invalid JSON: ") + e.what());
    }
    try {
      send_json(res, 201, sessions_.create(body));
    } catch (const NotFoundError& e) {
      send_error(res, 400, "unknown-game", e.what());
    } catch (const InvalidArgumentError& e) {
      send_error(res, 400, "bad-request", e.what());
    } catch (const TagError& e) {
      send_error(res, 400, "bad-request", e.what());
    }
  });

  svr.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"sessions", sessions_.list()}});
  });

  svr.Get("/sessions/:id/observation", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.find(req.path_params.at("id"));
    if (!session) return send_error(res, 404, "unknown-session", "no such session");
    const int seat = session->seat_for_token(req.get_param_value("seat"));
    if (seat == kNoPlayer) return send_error(res, 403, "unauthorized", "unknown seat token");
    send_json(res, 200, session->observation(seat));
  });

  svr.Post("/sessions/:id/action", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.find(req.path_params.at("id"));
    if (!session) return send_error(res, 404, "unknown-session", "no such session");
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      return send_error(res, 400, "bad-request", std::string("invalid JSON: ") + e.what());
    }
    if (!body.is_object() || !body.contains("seat") || !body.at("seat").is_string() || !body.contains("actionId") ||
        !body.at("actionId").is_string()) {
      return send_error(res, 400, "bad-request", "body needs string fields 'seat' and 'actionId'");
    }
    const int seat = session->seat_for_token(body.at("seat").get<std::string>());
    if (seat == kNoPlayer) return send_error(res, 403, "unauthorized", "unknown seat token");
    const SubmitResult r = session->submit(seat, body.at("actionId").get<std::string>());
    if (r.status == SubmitStatus::kAccepted) {
      return send_json(res, 200, {{"accepted", true}, {"observation", r.observation}});
    }
    send_error(res, http_status(r.status), std::string(to_string(r.status)), r.message,
               {{"observation", r.observation}});
  });

  svr.Get("/sessions/:id/events", [this](const httplib::Request& req, httplib::Response& res) {
    auto session = sessions_.find(req.path_params.at("id"));
    if (!session) return send_error(res, 404, "unknown-session", "no such session");
    auto sub = session->subscribe();
    const auto keepalive = options_.keepalive;
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [sub, keepalive](std::size_t, httplib::DataSink& sink) {
      auto frame = sub->pop(keepalive);
      if (frame) {
        const std::string text = sse_frame(*frame);
        if (!sink.write(text.data(), text.size())) return false;
        return true;
      }
      if (sub->closed()) {
        sink.done();
        return true;
      }
      static constexpr char kPing[] = ": keepalive\n\n";
      return sink.write(kPing, sizeof(kPing) - 1);
    });
  });

  svr.Get("/schema", [](const httplib::Request&, httplib::Response& res) {
    std::ifstream in(data_dir() / "schema" / "play_service.schema.json");
    if (!in) return send_error(res, 404, "not-found", "schema file missing");
    std::stringstream buffer;
    buffer << in.rdbuf();
    res.set_content(buffer.str(), "application/schema+json");
  });

  if (!options_.static_dir.empty()) svr.set_mount_point("/", options_.static_dir.string());
}

int PlayServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void PlayServer::listen() { server_->listen_after_bind(); }

int PlayServer::start(const std::string& host, int port) {
  const int bound = bind(host, port);
  if (bound < 0) return bound;
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
  return bound;
}

void PlayServer::stop() {
  sessions_.stop_all();
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace tag

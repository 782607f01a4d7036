#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "tag/agents/agent_spec.hpp"
#include "tag/core/game.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/service/observation_view.hpp"

namespace tag {

/// One `{type, payload, tick}` frame of a session's event stream.
struct EventFrame {
  std::string type;
  nlohmann::json payload;
  int tick = 0;

  nlohmann::json to_json() const { return {{"type", type}, {"payload", payload}, {"tick", tick}}; }
};

/// Per-subscriber bounded queue. A subscriber that falls `capacity` frames
/// behind is closed instead of slowing the game down.
class Subscription {
 public:
  explicit Subscription(std::size_t capacity) : capacity_(capacity) {}

  /// Waits up to `timeout` for a frame. Returns nullopt on timeout or once
  /// the subscription is closed and drained.
  std::optional<EventFrame> pop(std::chrono::milliseconds timeout);
  bool closed() const;
  /// True when the stream was cut because the subscriber fell behind.
  bool dropped() const;

 private:
  friend class Session;
  void push(const EventFrame& frame);
  void close(bool dropped);

  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<EventFrame> frames_;
  std::size_t capacity_;
  bool closed_ = false;
  bool dropped_ = false;
};

struct SessionOptions {
  /// Minimum wall time per AI decision so spectators can follow.
  std::chrono::milliseconds ai_pacing{300};
  CoreConfig core;
  std::size_t subscriber_capacity = 4096;
};

enum class SubmitStatus { kAccepted, kNotYourTurn, kStale, kUnknownAction, kUnauthorized, kGameOver };
std::string_view to_string(SubmitStatus s);

struct SubmitResult {
  SubmitStatus status = SubmitStatus::kAccepted;
  std::string message;
  /// The seat's current observation, so a rejected client can refresh.
  nlohmann::json observation;
};

/// One game with a mix of AI and human seats. The game loop runs on its own
/// thread; human decisions block it until submitted.
class Session {
 public:
  Session(std::string id, const GameDescriptor& game, std::vector<AgentSpec> seats, std::uint64_t seed,
          SessionOptions options);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  void start();
  /// Stops the loop; a blocked human decision is abandoned.
  void stop();

  const std::string& id() const { return id_; }
  const std::string& game_name() const { return game_name_; }
  std::uint64_t seed() const { return seed_; }
  int n_seats() const { return static_cast<int>(seats_.size()); }
  /// Tokens of human seats; empty strings for AI seats.
  std::vector<std::string> seat_tokens() const;
  /// Seat owning `token`, or kNoPlayer.
  int seat_for_token(std::string_view token) const;

  nlohmann::json observation(int seat) const;
  SubmitResult submit(int seat, std::string_view action_id);
  /// New subscriber; its first frame is a public state snapshot.
  std::shared_ptr<Subscription> subscribe();
  nlohmann::json summary() const;

  bool finished() const;
  /// Returns false on timeout.
  bool wait_finished(std::chrono::milliseconds timeout) const;
  GameResultRecord record() const;
  /// Set when the loop died on an exception.
  std::string error() const;

 private:
  struct Seat {
    AgentSpec spec;
    bool human = false;
    std::string token;
    std::unique_ptr<Agent> agent;
  };
  struct PendingDecision {
    int seat = kNoPlayer;
    std::uint64_t serial = 0;
    TurnContext turn;
    std::optional<std::size_t> chosen;
  };

  void run();
  void play();
  void emit(const std::string& type, nlohmann::json payload);
  std::vector<OfferedAction> offered(int seat) const;
  nlohmann::json observation_locked(int seat) const;

  std::string id_;
  std::string game_name_;
  std::uint64_t seed_;
  SessionOptions options_;
  std::vector<Seat> seats_;
  std::unique_ptr<Game> game_;

  mutable std::mutex mutex_;
  mutable std::condition_variable changed_;
  std::optional<PendingDecision> pending_;
  std::uint64_t serial_ = 0;
  bool stop_ = false;
  bool finished_ = false;
  std::string error_;
  std::vector<std::weak_ptr<Subscription>> subscribers_;
  std::thread thread_;
};

/// Thread-safe registry of live sessions.
class SessionManager {
 public:
  SessionManager(const GameRegistry& games, SessionOptions options) : games_(games), options_(options) {}
  ~SessionManager();

  /// `{game, seats[], seed?}` -> `{sessionId, seatTokens[], seed}`. Throws
  /// InvalidArgumentError / NotFoundError on bad requests.
  nlohmann::json create(const nlohmann::json& request);
  std::shared_ptr<Session> find(std::string_view id) const;
  nlohmann::json list() const;
  void stop_all();

 private:
  const GameRegistry& games_;
  SessionOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>, std::less<>> sessions_;
};

/// 128-bit random hex string from the system entropy source.
std::string random_token();

}  // namespace tag

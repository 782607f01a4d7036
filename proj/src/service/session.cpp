#include "tag/service/session.hpp"

#include <random>

#include "tag/core/errors.hpp"

namespace tag {

std::string random_token() {
  static std::mutex mutex;
  static std::random_device device;
  std::lock_guard lock(mutex);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 4; ++i) {
    std::uint32_t v = device();
    for (int k = 0; k < 8; ++k, v >>= 4) out += kHex[v & 0xf];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subscription

std::optional<EventFrame> Subscription::pop(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  ready_.wait_for(lock, timeout, [&] { return !frames_.empty() || closed_; });
  if (frames_.empty()) return std::nullopt;
  EventFrame f = std::move(frames_.front());
  frames_.pop_front();
  return f;
}

bool Subscription::closed() const {
  std::lock_guard lock(mutex_);
  return closed_ && frames_.empty();
}

bool Subscription::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

void Subscription::push(const EventFrame& frame) {
  {
    std::lock_guard lock(mutex_);
    if (closed_) return;
    if (frames_.size() >= capacity_) {
      closed_ = true;
      dropped_ = true;
      frames_.clear();
    } else {
      frames_.push_back(frame);
    }
  }
  ready_.notify_all();
}

void Subscription::close(bool dropped) {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
    dropped_ = dropped_ || dropped;
  }
  ready_.notify_all();
}

std::string_view to_string(SubmitStatus s) {
  switch (s) {
    case SubmitStatus::kAccepted: return "accepted";
    case SubmitStatus::kNotYourTurn: return "not-your-turn";
    case SubmitStatus::kStale: return "stale";
    case SubmitStatus::kUnknownAction: return "unknown-action";
    case SubmitStatus::kUnauthorized: return "unauthorized";
    case SubmitStatus::kGameOver: return "game-over";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Session

namespace {

nlohmann::json results_json(const GameState& state) {
  nlohmann::json out = nlohmann::json::array();
  for (auto r : state.results()) out.push_back(std::string(to_string(r)));
  return out;
}

}  // namespace

Session::Session(std::string id, const GameDescriptor& game, std::vector<AgentSpec> seats, std::uint64_t seed,
                 SessionOptions options)
    : id_(std::move(id)), game_name_(game.name), seed_(seed), options_(options) {
  const int n = static_cast<int>(seats.size());
  if (!game.supports(n)) {
    throw InvalidArgumentError(game.name + " supports " + std::to_string(game.min_players) + ".." +
                               std::to_string(game.max_players) + " players, got " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    Seat seat;
    seat.spec = std::move(seats[static_cast<std::size_t>(i)]);
    if (seat.spec.name == "console") throw InvalidArgumentError("console seats cannot join a service session");
    seat.human = is_human_spec(seat.spec);
    if (seat.human) {
      seat.token = random_token();
    } else {
      seat.agent = make_agent(seat.spec, {agent_seed(seed, i)});
    }
    seats_.push_back(std::move(seat));
  }
  auto params = game.parameters(seed);
  GameInstance instance = game.create(n, *params, options_.core);
  game_ = std::make_unique<Game>(std::move(instance.state), std::move(instance.forward_model), options_.core);
  game_->setup();
  for (int i = 0; i < n; ++i) {
    if (seats_[static_cast<std::size_t>(i)].agent) seats_[static_cast<std::size_t>(i)].agent->initialize(i, game_->forward_model());
  }
}

Session::~Session() { stop(); }

void Session::start() {
  std::lock_guard lock(mutex_);
  if (thread_.joinable() || finished_) return;
  thread_ = std::thread([this] { run(); });
}

void Session::stop() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  changed_.notify_all();
  if (thread_.joinable() && thread_.get_id() != std::this_thread::get_id()) thread_.join();
}

std::vector<std::string> Session::seat_tokens() const {
  std::vector<std::string> out;
  for (const auto& s : seats_) out.push_back(s.token);
  return out;
}

int Session::seat_for_token(std::string_view token) const {
  if (token.empty()) return kNoPlayer;
  for (std::size_t i = 0; i < seats_.size(); ++i) {
    if (seats_[i].human && seats_[i].token == token) return static_cast<int>(i);
  }
  return kNoPlayer;
}

void Session::emit(const std::string& type, nlohmann::json payload) {
  const EventFrame frame{type, std::move(payload), game_->state().tick()};
  for (auto it = subscribers_.begin(); it != subscribers_.end();) {
    if (auto sub = it->lock(); sub && !sub->dropped()) {
      sub->push(frame);
      ++it;
    } else {
      it = subscribers_.erase(it);
    }
  }
}

std::vector<OfferedAction> Session::offered(int seat) const {
  std::vector<OfferedAction> out;
  if (!pending_ || pending_->seat != seat || pending_->chosen) return out;
  const auto& actions = pending_->turn.actions;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    out.push_back({"d" + std::to_string(pending_->serial) + "-" + std::to_string(i), actions[i]->to_string()});
  }
  return out;
}

nlohmann::json Session::observation_locked(int seat) const {
  const auto actions = offered(seat);
  if (pending_ && pending_->seat == seat) return observation_view(*pending_->turn.observation, seat, actions);
  return observation_view(*game_->state().copy(seat), seat, actions);
}

nlohmann::json Session::observation(int seat) const {
  if (seat < 0 || seat >= n_seats()) throw InvalidArgumentError("seat out of range");
  std::lock_guard lock(mutex_);
  return observation_locked(seat);
}

SubmitResult Session::submit(int seat, std::string_view action_id) {
  std::unique_lock lock(mutex_);
  SubmitResult r;
  if (seat < 0 || seat >= n_seats() || !seats_[static_cast<std::size_t>(seat)].human) {
    r.status = SubmitStatus::kUnauthorized;
    r.message = "not a human seat";
    return r;
  }
  r.observation = observation_locked(seat);
  if (finished_) {
    r.status = SubmitStatus::kGameOver;
    r.message = "the game has ended";
    return r;
  }
  // Ids look like d<serial>-<index>.
  std::uint64_t serial = 0;
  std::size_t index = 0;
  bool parsed = false;
  if (action_id.size() > 1 && action_id.front() == 'd') {
    const auto dash = action_id.find('-');
    if (dash != std::string_view::npos) {
      try {
        std::size_t used = 0;
        const std::string a(action_id.substr(1, dash - 1));
        const std::string b(action_id.substr(dash + 1));
        serial = std::stoull(a, &used);
        parsed = used == a.size();
        index = std::stoul(b, &used);
        parsed = parsed && used == b.size() && !a.empty() && !b.empty() && a[0] != '-' && b[0] != '-';
      } catch (const std::exception&) {
        parsed = false;
      }
    }
  }
  if (!parsed) {
    r.status = SubmitStatus::kUnknownAction;
    r.message = "malformed action id '" + std::string(action_id) + "'";
    return r;
  }
  const bool live = pending_ && !pending_->chosen;
  if (!live || serial != pending_->serial) {
    if (serial != 0 && serial <= serial_) {
      r.status = SubmitStatus::kStale;
      r.message = "action id '" + std::string(action_id) + "' is no longer offered";
    } else {
      r.status = SubmitStatus::kNotYourTurn;
      r.message = "it is not your decision";
    }
    return r;
  }
  if (pending_->seat != seat) {
    r.status = SubmitStatus::kNotYourTurn;
    r.message = "it is player " + std::to_string(pending_->seat) + "'s decision";
    return r;
  }
  if (index >= pending_->turn.actions.size()) {
    r.status = SubmitStatus::kUnknownAction;
    r.message = "no action '" + std::string(action_id) + "'";
    return r;
  }
  pending_->chosen = index;
  lock.unlock();
  changed_.notify_all();
  r.status = SubmitStatus::kAccepted;
  r.message.clear();
  // Wait until the loop applied the action so the caller sees its effect.
  lock.lock();
  changed_.wait(lock, [&] { return stop_ || finished_ || !pending_ || pending_->serial != serial; });
  r.observation = observation_locked(seat);
  return r;
}

std::shared_ptr<Subscription> Session::subscribe() {
  auto sub = std::make_shared<Subscription>(options_.subscriber_capacity);
  std::lock_guard lock(mutex_);
  sub->push({"state-snapshot", table_view(game_->state(), kNoPlayer), game_->state().tick()});
  if (finished_) {
    sub->push({"game-ended", {{"results", results_json(game_->state())}}, game_->state().tick()});
    sub->close(false);
  } else {
    subscribers_.push_back(sub);
  }
  return sub;
}

void Session::run() {
  try {
    play();
  } catch (const std::exception& e) {
    std::lock_guard lock(mutex_);
    error_ = e.what();
    emit("game-ended", {{"results", results_json(game_->state())}, {"error", error_}});
  }
  std::lock_guard lock(mutex_);
  finished_ = true;
  pending_.reset();
  for (auto& weak : subscribers_) {
    if (auto sub = weak.lock()) sub->close(false);
  }
  subscribers_.clear();
  changed_.notify_all();
}

void Session::play() {
  using Clock = std::chrono::steady_clock;
  for (;;) {
    std::unique_lock lock(mutex_);
    if (stop_) return;
    if (game_->is_over()) {
      for (std::size_t i = 0; i < seats_.size(); ++i) {
        if (seats_[i].agent) seats_[i].agent->finalize(*game_->state().copy(static_cast<int>(i)));
      }
      emit("game-ended", {{"results", results_json(game_->state())}});
      return;
    }
    TurnContext turn = game_->begin_turn();
    const int player = turn.player;
    Seat& seat = seats_[static_cast<std::size_t>(player)];
    emit("turn-started", {{"player", player}});

    ActionPtr chosen;
    if (!turn.is_decision()) {
      if (seat.agent) seat.agent->register_updated_observation(*turn.observation);
      chosen = turn.actions.front();
    } else if (seat.human) {
      const std::uint64_t serial = ++serial_;
      pending_ = PendingDecision{player, serial, std::move(turn), std::nullopt};
      changed_.notify_all();
      changed_.wait(lock, [&] { return stop_ || pending_->chosen.has_value(); });
      if (stop_) return;
      turn = std::move(pending_->turn);
      chosen = turn.actions[*pending_->chosen];
    } else {
      // AI thinking runs unlocked on its private observation.
      lock.unlock();
      const auto deadline = Clock::now() + options_.ai_pacing;
      chosen = seat.agent->get_action(*turn.observation, turn.actions);
      lock.lock();
      changed_.wait_until(lock, deadline, [&] { return stop_; });
      if (stop_) return;
    }

    const int round_before = game_->state().turn_order().round_counter();
    game_->complete_turn(turn, chosen);
    pending_.reset();
    emit("action-applied", {{"player", player}, {"action", game_->log().back().action}});
    const int round_after = game_->state().turn_order().round_counter();
    if (round_after != round_before) emit("round-ended", {{"round", round_before}, {"public", game_->state().public_info()}});
    changed_.notify_all();
  }
}

nlohmann::json Session::summary() const {
  std::lock_guard lock(mutex_);
  nlohmann::json seats = nlohmann::json::array();
  for (std::size_t i = 0; i < seats_.size(); ++i) {
    seats.push_back({{"seat", i}, {"spec", seats_[i].spec.to_string()}, {"human", seats_[i].human}});
  }
  return {{"sessionId", id_},
          {"game", game_name_},
          {"seed", seed_},
          {"seats", seats},
          {"status", std::string(to_string(game_->state().status()))},
          {"tick", game_->state().tick()},
          {"waitingFor", pending_ && !pending_->chosen ? nlohmann::json(pending_->seat) : nlohmann::json(nullptr)}};
}

bool Session::finished() const {
  std::lock_guard lock(mutex_);
  return finished_;
}

bool Session::wait_finished(std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mutex_);
  return changed_.wait_for(lock, timeout, [&] { return finished_; });
}

GameResultRecord Session::record() const {
  std::lock_guard lock(mutex_);
  return game_->record();
}

std::string Session::error() const {
  std::lock_guard lock(mutex_);
  return error_;
}

// ---------------------------------------------------------------------------
// SessionManager

SessionManager::~SessionManager() { stop_all(); }

nlohmann::json SessionManager::create(const nlohmann::json& request) {
  if (!request.is_object()) throw InvalidArgumentError("request body must be a JSON object");
  if (!request.contains("game") || !request.at("game").is_string()) throw InvalidArgumentError("'game' must be a string");
  if (!request.contains("seats") || !request.at("seats").is_array()) throw InvalidArgumentError("'seats' must be an array");
  const GameDescriptor& game = games_.lookup(request.at("game").get<std::string>());
  std::vector<AgentSpec> seats;
  for (const auto& s : request.at("seats")) {
    if (!s.is_string()) throw InvalidArgumentError("seat specs must be strings");
    seats.push_back(parse_agent_spec(s.get<std::string>()));
  }
  std::uint64_t seed = 0;
  if (request.contains("seed") && !request.at("seed").is_null()) {
    if (!request.at("seed").is_number_unsigned()) throw InvalidArgumentError("'seed' must be a non-negative integer");
    seed = request.at("seed").get<std::uint64_t>();
  } else {
    seed = std::stoull(random_token().substr(0, 12), nullptr, 16);
  }
  auto session = std::make_shared<Session>(random_token().substr(0, 16), game, std::move(seats), seed, options_);
  {
    std::lock_guard lock(mutex_);
    sessions_.emplace(session->id(), session);
  }
  session->start();
  nlohmann::json tokens = nlohmann::json::array();
  for (const auto& t : session->seat_tokens()) tokens.push_back(t.empty() ? nlohmann::json(nullptr) : nlohmann::json(t));
  return {{"sessionId", session->id()}, {"seatTokens", tokens}, {"seed", seed}, {"game", game.name}};
}

std::shared_ptr<Session> SessionManager::find(std::string_view id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

nlohmann::json SessionManager::list() const {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : all) out.push_back(s->summary());
  return out;
}

void SessionManager::stop_all() {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  for (const auto& s : all) s->stop();
}

}  // namespace tag

#include "coolctl/service.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include <httplib.h>
#include <json.hpp>

#include "coolctl/io.hpp"
#include "coolctl/reference_data.hpp"

namespace coolctl::service {
namespace {

using nlohmann::json;

json reading_json(const SensorReading& r) {
  return {{"temperature_c", r.temperature_c}, {"duration_min", r.duration_min}, {"humidity_pct", r.humidity_pct}};
}

json snapshot_json(const StateSnapshot& s) {
  return {{"tick", s.tick},
          {"mode", std::string(to_string(s.mode))},
          {"speed", s.speed.value()},
          {"learn_armed", s.learn_armed},
          {"reading", reading_json(s.reading)},
          {"room", {{"air_temp", s.air_temp}, {"humidity", s.humidity}}},
          {"weights_version", s.weights_version}};
}

}  // namespace

std::string to_json(const StateSnapshot& s) { return snapshot_json(s).dump(); }

std::string to_json(const CommandResult& r) { return json{{"accepted", r.accepted}, {"detail", r.detail}}.dump(); }

Session::Session(SessionConfig config)
    : config_(std::move(config)),
      controller_(init(config_.sim.controller, config_.weights, Timestamp{0})),
      plant_(config_.sim.plant),
      sensor_(config_.sim.sensor),
      room_(config_.sim.initial) {
  config_.sim.plant.validate();
  if (config_.history == 0) config_.history = 1;
  last_reading_ = sensor_.sense(room_, 0);
}

StateSnapshot Session::make_snapshot() const {
  return {tick_,         controller_.mode, controller_.speed, controller_.learn_armed, last_reading_,
          room_.air_temp, room_.humidity,  weights_version_};
}

StateSnapshot Session::snapshot() const {
  std::lock_guard lock(mu_);
  return make_snapshot();
}

Session::VersionedWeights Session::weights() const {
  std::lock_guard lock(mu_);
  return {controller_.weights, weights_version_};
}

CommandResult Session::press(std::string_view key) {
  const auto parsed = parse_key(key);
  if (!parsed) {
    return {false, "unknown key '" + std::string(key) + "'; expected 0..5 or learn"};
  }
  std::lock_guard lock(mu_);
  if (closed_) return {false, "session closed"};
  if (!regulates_next_tick(controller_, config_.sim.controller)) {
    return {false, "keypad is not scanned during free-running mode"};
  }
  pending_.push_back(KeyCommand{*parsed});
  return {true, "key " + std::string(to_string(*parsed)) + " queued for tick " + std::to_string(tick_ + 1)};
}

CommandResult Session::set_environment(double outside_temp, double humidity_target) {
  if (!std::isfinite(outside_temp) || outside_temp < sim::kMinAirTemp || outside_temp > sim::kMaxAirTemp) {
    return {false, "outside_temp must be within [-20, 80]"};
  }
  if (!std::isfinite(humidity_target) || humidity_target < 0 || humidity_target > 100) {
    return {false, "humidity_target must be within [0, 100]"};
  }
  std::lock_guard lock(mu_);
  if (closed_) return {false, "session closed"};
  pending_.push_back(EnvCommand{outside_temp, humidity_target});
  return {true, "environment change queued for tick " + std::to_string(tick_ + 1)};
}

CommandResult Session::reset(const WeightMatrix& weights) {
  std::lock_guard lock(mu_);
  if (closed_) return {false, "session closed"};
  pending_.push_back(ResetCommand{weights});
  return {true, "reset queued for tick " + std::to_string(tick_ + 1)};
}

StateSnapshot Session::step() {
  std::unique_lock lock(mu_);
  const auto& ccfg = config_.sim.controller;
  const Timestamp clock = ccfg.tick_interval * (tick_ + 1);

  std::vector<KeyEvent> keys;
  for (auto& cmd : pending_) {
    if (auto* k = std::get_if<KeyCommand>(&cmd)) {
      keys.push_back(k->key);
    } else if (auto* e = std::get_if<EnvCommand>(&cmd)) {
      plant_.outside_temp = e->outside_temp;
      plant_.humidity_target = e->humidity_target;
    } else if (auto* r = std::get_if<ResetCommand>(&cmd)) {
      // Keys queued before a reset belong to the old controller.
      keys.clear();
      controller_ = init(ccfg, r->weights, controller_.last_clock);
      ++weights_version_;
    }
  }
  pending_.clear();

  const double dt = std::chrono::duration<double>(ccfg.tick_interval).count();
  room_ = sim::step_plant(room_, controller_.speed, plant_, dt);
  const SensorReading sensed = sensor_.sense(room_);
  const TickResult r = tick(controller_, ccfg, sensed, keys, clock);
  controller_ = r.state;
  last_reading_ = r.effective;
  weights_version_ += static_cast<std::int64_t>(r.trained.size());
  if (!r.trained.empty() && !config_.training_log.empty()) {
    try {
      io::append_training_csv(config_.training_log, r.trained);
    } catch (const std::exception& e) {
      std::cerr << "training log: " << e.what() << '\n';
    }
  }
  ++tick_;

  const StateSnapshot snap = make_snapshot();
  history_.push_back(snap);
  while (history_.size() > config_.history) history_.pop_front();
  lock.unlock();
  cv_.notify_all();
  return snap;
}

Session::WaitResult Session::wait_for_tick(std::int64_t tick, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mu_);
  const bool ready = cv_.wait_for(lock, timeout, [&] { return closed_ || tick_ >= tick; });
  if (closed_) return {WaitStatus::closed, std::nullopt};
  if (!ready) return {WaitStatus::timeout, std::nullopt};
  if (history_.empty() || history_.front().tick > tick) return {WaitStatus::dropped, std::nullopt};
  const auto index = static_cast<std::size_t>(tick - history_.front().tick);
  return {WaitStatus::event, history_[index]};
}

void Session::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

// ---------------------------------------------------------------------------

struct Server::Impl {
  Session& session;
  httplib::Server http;
  std::thread listener;
  std::thread ticker;
  std::mutex mu;
  std::condition_variable cv;
  bool stopping = false;

  explicit Impl(Session& s) : session(s) {}
  void routes();
};

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply(httplib::Response& res, const CommandResult& r, int reject_status = 400) {
  reply(res, r.accepted ? 200 : reject_status, json{{"accepted", r.accepted}, {"detail", r.detail}});
}

std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
  try {
    auto body = json::parse(req.body);
    if (!body.is_object()) throw std::invalid_argument("body must be a JSON object");
    return body;
  } catch (const std::exception& e) {
    reply(res, CommandResult{false, std::string("malformed request: ") + e.what()});
    return std::nullopt;
  }
}

}  // namespace

void Server::Impl::routes() {
  http.Get("/state", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, snapshot_json(session.snapshot()));
  });

  http.Get("/weights", [this](const httplib::Request&, httplib::Response& res) {
    const auto w = session.weights();
    auto body = json::parse(io::weights_to_json(w.weights));
    body["weights_version"] = w.version;
    reply(res, 200, body);
  });

  http.Post("/keypad", [this](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req, res);
    if (!body) return;
    if (!body->contains("key") || !body->at("key").is_string()) {
      reply(res, CommandResult{false, "expected {\"key\": \"0\"..\"5\" | \"learn\"}"});
      return;
    }
    const auto key = body->at("key").get<std::string>();
    const auto r = session.press(key);
    // A valid key refused because of controller state is a conflict, not a
    // malformed request.
    reply(res, r, parse_key(key) ? 409 : 400);
  });

  http.Post("/env", [this](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req, res);
    if (!body) return;
    const auto& b = *body;
    if (!b.contains("outside_temp") || !b.at("outside_temp").is_number() || !b.contains("humidity_target") ||
        !b.at("humidity_target").is_number()) {
      reply(res, CommandResult{false, "expected {\"outside_temp\": number, \"humidity_target\": number}"});
      return;
    }
    reply(res, session.set_environment(b.at("outside_temp").get<double>(), b.at("humidity_target").get<double>()));
  });

  http.Post("/reset", [this](const httplib::Request& req, httplib::Response& res) {
    const auto body = parse_body(req, res);
    if (!body) return;
    if (!body->contains("weights")) {
      reply(res, CommandResult{false, "expected {\"weights\": \"reference\" | \"zero\" | matrix}"});
      return;
    }
    const auto& given = body->at("weights");
    WeightMatrix w;
    try {
      if (given == "reference") {
        w = reference::reference_matrix();
      } else if (given == "zero") {
        w = zero_matrix();
      } else if (given.is_array()) {
        w = WeightMatrix::from_rows(given.get<std::vector<std::vector<std::int64_t>>>());
      } else if (given.is_object()) {
        w = io::weights_from_json(given.dump(), "request");
      } else {
        throw std::invalid_argument("weights must be \"reference\", \"zero\" or a 21x6 matrix");
      }
    } catch (const std::exception& e) {
      reply(res, CommandResult{false, e.what()});
      return;
    }
    reply(res, session.reset(w));
  });

  http.Get("/events", [this](const httplib::Request&, httplib::Response& res) {
    // Subscribers start at the next tick; there is no replay.
    auto next = std::make_shared<std::int64_t>(session.snapshot().tick + 1);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [this, next](std::size_t, httplib::DataSink& sink) {
      const auto r = session.wait_for_tick(*next, std::chrono::milliseconds(1000));
      switch (r.status) {
        case Session::WaitStatus::event: {
          const std::string frame = "data: " + to_json(*r.snapshot) + "\n\n";
          ++*next;
          return sink.write(frame.data(), frame.size());
        }
        case Session::WaitStatus::timeout: {
          static constexpr char keepalive[] = ": keepalive\n\n";
          return sink.write(keepalive, sizeof keepalive - 1);
        }
        case Session::WaitStatus::dropped:
          return false;
        case Session::WaitStatus::closed:
          sink.done();
          return true;
      }
      return false;
    });
  });
}

Server::Server(Session& session, const std::string& host, int port) : impl_(std::make_unique<Impl>(session)) {
  impl_->routes();
  // SO_REUSEADDR only: the library default adds SO_REUSEPORT, which would let a
  // second instance silently share the port.
  impl_->http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  if (port == 0) {
    port_ = impl_->http.bind_to_any_port(host);
    if (port_ <= 0) throw std::runtime_error("cannot bind " + host + " to any port");
  } else {
    if (port < 0 || port > 65535 || !impl_->http.bind_to_port(host, port)) {
      throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    }
    port_ = port;
  }
}

Server::~Server() { stop(); }

void Server::start(std::chrono::milliseconds tick_period) {
  impl_->listener = std::thread([this] { impl_->http.listen_after_bind(); });
  if (tick_period.count() > 0) {
    impl_->ticker = std::thread([this, tick_period] {
      std::unique_lock lock(impl_->mu);
      auto due = std::chrono::steady_clock::now() + tick_period;
      while (!impl_->cv.wait_until(lock, due, [this] { return impl_->stopping; })) {
        lock.unlock();
        impl_->session.step();
        lock.lock();
        due += tick_period;
      }
    });
  }
  impl_->http.wait_until_ready();
}

void Server::stop() {
  {
    std::lock_guard lock(impl_->mu);
    impl_->stopping = true;
  }
  impl_->cv.notify_all();
  if (impl_->ticker.joinable()) impl_->ticker.join();
  impl_->session.close();
  impl_->http.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
}

void Server::wait() {
  if (impl_->listener.joinable()) impl_->listener.join();
}

}  // namespace coolctl::service

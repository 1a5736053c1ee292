#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "coolctl/controller.hpp"
#include "coolctl/simulator.hpp"

namespace coolctl::service {

inline constexpr const char* kDefaultHost = "127.0.0.1";
inline constexpr int kDefaultPort = 8737;

struct StateSnapshot {
  std::int64_t tick = 0;
  Mode mode = Mode::free_running;
  SpeedClass speed{SpeedClass::kMax};
  bool learn_armed = false;
  SensorReading reading;
  double air_temp = 0.0;
  double humidity = 0.0;
  std::int64_t weights_version = 0;

  friend bool operator==(const StateSnapshot&, const StateSnapshot&) = default;
};

std::string to_json(const StateSnapshot& s);

struct CommandResult {
  bool accepted = false;
  std::string detail;
};

std::string to_json(const CommandResult& r);

struct SessionConfig {
  sim::SimulationConfig sim;
  WeightMatrix weights;
  /// Wall-clock time between ticks when served; zero means ticks only happen
  /// through Session::step().
  std::chrono::milliseconds tick_period{0};
  /// Snapshots retained for event subscribers; a subscriber that falls further
  /// behind is disconnected.
  std::size_t history = 256;
  /// Keypad-trained pairs are appended here as training CSV rows when set.
  std::filesystem::path training_log;
};

/// One live controller + plant. Every mutation is queued and applied, in
/// arrival order, at the start of the next tick.
class Session {
 public:
  explicit Session(SessionConfig config);

  StateSnapshot snapshot() const;
  struct VersionedWeights {
    WeightMatrix weights;
    std::int64_t version;
  };
  VersionedWeights weights() const;

  CommandResult press(std::string_view key);
  CommandResult set_environment(double outside_temp, double humidity_target);
  CommandResult reset(const WeightMatrix& weights);

  /// Applies queued commands, advances plant and controller one tick.
  StateSnapshot step();

  enum class WaitStatus { event, timeout, dropped, closed };
  struct WaitResult {
    WaitStatus status;
    std::optional<StateSnapshot> snapshot;
  };
  /// The snapshot for tick `tick`, waiting up to `timeout` for it to happen.
  WaitResult wait_for_tick(std::int64_t tick, std::chrono::milliseconds timeout) const;

  /// Wakes all waiters; subsequent waits return `closed`.
  void close();

 private:
  struct KeyCommand {
    KeyEvent key;
  };
  struct EnvCommand {
    double outside_temp;
    double humidity_target;
  };
  struct ResetCommand {
    WeightMatrix weights;
  };
  using Command = std::variant<KeyCommand, EnvCommand, ResetCommand>;

  StateSnapshot make_snapshot() const;

  SessionConfig config_;
  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::vector<Command> pending_;
  ControllerState controller_;
  sim::PlantParams plant_;
  sim::Sensor sensor_;
  sim::RoomState room_;
  SensorReading last_reading_;
  std::int64_t tick_ = 0;
  std::int64_t weights_version_ = 0;
  std::deque<StateSnapshot> history_;
  bool closed_ = false;
};

/// HTTP front end for a Session:
///   GET /state, GET /weights, GET /events (server-sent events),
///   POST /keypad, POST /env, POST /reset.
class Server {
 public:
  /// Throws std::runtime_error when the address cannot be bound. Port 0 picks
  /// a free port.
  Server(Session& session, const std::string& host, int port);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  int port() const { return port_; }
  /// Serves until stop(); also starts the ticker when tick_period > 0.
  void start(std::chrono::milliseconds tick_period);
  void stop();
  /// Blocks until the server stops.
  void wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace coolctl::service

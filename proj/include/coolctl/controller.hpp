#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "coolctl/encoding.hpp"
#include "coolctl/memory.hpp"

namespace coolctl {

/// Controller clock: milliseconds since an arbitrary origin.
using Timestamp = std::chrono::milliseconds;

struct LearnKey {
  friend bool operator==(LearnKey, LearnKey) = default;
};
struct DigitKey {
  SpeedClass speed;
  friend bool operator==(DigitKey, DigitKey) = default;
};
/// One of the seven keypad keys: digits 0..5 or LEARN.
using KeyEvent = std::variant<DigitKey, LearnKey>;

/// "0".."5" or "learn"; nullopt for anything else.
std::optional<KeyEvent> parse_key(std::string_view text);
std::string_view to_string(const KeyEvent& key);

struct ControllerConfig {
  Timestamp tick_interval{5000};
  int startup_grace_ticks = 12;
  int temperature_band_deg = 1;
  int duration_cap_min = 60;

  /// Throws std::domain_error on a non-positive interval or band, a negative
  /// grace period, or a cap outside [1, 127].
  void validate() const;
};

enum class Mode { free_running, regulating };
std::string_view to_string(Mode m);

struct ControllerState {
  Mode mode = Mode::free_running;
  SpeedClass speed{SpeedClass::kMax};
  WeightMatrix weights;
  bool learn_armed = false;
  Timestamp epoch_start{0};
  /// Unset until the first reading anchors the temperature band.
  std::optional<int> epoch_temperature;
  std::int64_t tick_count = 0;
  Timestamp last_clock{0};

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

/// Speed plus the relay tap (R0..R5) that realises it.
struct ActuationCommand {
  SpeedClass speed;
  std::string_view relay_tap() const;
  friend bool operator==(const ActuationCommand&, const ActuationCommand&) = default;
};

struct TickResult {
  ControllerState state;
  ActuationCommand command;
  /// Reading with the controller's own duration substituted.
  SensorReading effective;
  /// Pairs learned through Learn + digit this tick, in key order.
  std::vector<TrainingPair> trained;
  bool manual_override = false;
};

ControllerState init(const ControllerConfig& config, const WeightMatrix& weights, Timestamp clock);

/// Whole minutes since the epoch started, clamped to [0, duration_cap_min].
int effective_duration(const ControllerState& state, const ControllerConfig& config, Timestamp clock);

/// True when the tick following `state` runs in Regulating mode, i.e. when the
/// keypad will be scanned.
bool regulates_next_tick(const ControllerState& state, const ControllerConfig& config);

/// One pass of the control loop: mode promotion, keypad scan, duration epoch,
/// then the decision. Throws std::domain_error on an invalid reading or a clock
/// that runs backwards; the input state is never modified.
TickResult tick(const ControllerState& state, const ControllerConfig& config,
                const SensorReading& reading, std::span<const KeyEvent> keys, Timestamp clock);

}  // namespace coolctl

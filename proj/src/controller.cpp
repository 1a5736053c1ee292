#include "coolctl/controller.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace coolctl {

std::optional<KeyEvent> parse_key(std::string_view text) {
  if (text == "learn" || text == "LEARN") return LearnKey{};
  if (text.size() == 1 && text[0] >= '0' && text[0] <= '5') {
    return DigitKey{SpeedClass(text[0] - '0')};
  }
  return std::nullopt;
}

std::string_view to_string(const KeyEvent& key) {
  static constexpr std::array<std::string_view, 6> digits = {"0", "1", "2", "3", "4", "5"};
  if (const auto* d = std::get_if<DigitKey>(&key)) return digits[static_cast<std::size_t>(d->speed.value())];
  return "learn";
}

void ControllerConfig::validate() const {
  if (tick_interval.count() <= 0) throw std::domain_error("tick_interval must be positive");
  if (startup_grace_ticks < 0) throw std::domain_error("startup_grace_ticks must be >= 0");
  if (temperature_band_deg < 1) throw std::domain_error("temperature_band_deg must be >= 1");
  if (duration_cap_min < 1 || duration_cap_min > kFieldMax) {
    throw std::domain_error("duration_cap_min must be in [1, 127]");
  }
}

std::string_view to_string(Mode m) { return m == Mode::free_running ? "free_running" : "regulating"; }

std::string_view ActuationCommand::relay_tap() const {
  static constexpr std::array<std::string_view, 6> taps = {"R0", "R1", "R2", "R3", "R4", "R5"};
  return taps[static_cast<std::size_t>(speed.value())];
}

ControllerState init(const ControllerConfig& config, const WeightMatrix& weights, Timestamp clock) {
  config.validate();
  ControllerState s;
  s.weights = weights;
  s.epoch_start = clock;
  s.last_clock = clock;
  return s;
}

int effective_duration(const ControllerState& state, const ControllerConfig& config, Timestamp clock) {
  const auto elapsed = std::chrono::floor<std::chrono::minutes>(clock - state.epoch_start).count();
  return static_cast<int>(std::clamp<std::int64_t>(elapsed, 0, config.duration_cap_min));
}

bool regulates_next_tick(const ControllerState& state, const ControllerConfig& config) {
  return state.mode == Mode::regulating || state.tick_count + 1 > config.startup_grace_ticks;
}

TickResult tick(const ControllerState& state, const ControllerConfig& config,
                const SensorReading& reading, std::span<const KeyEvent> keys, Timestamp clock) {
  validate(reading);
  if (clock < state.last_clock) throw std::domain_error("controller clock moved backwards");

  TickResult r{state, ActuationCommand{state.speed}, reading, {}};
  ControllerState& s = r.state;
  s.tick_count += 1;
  s.last_clock = clock;

  if (s.mode == Mode::free_running && s.tick_count > config.startup_grace_ticks) {
    s.mode = Mode::regulating;
  }

  auto effective_now = [&] {
    return SensorReading{reading.temperature_c, effective_duration(s, config, clock), reading.humidity_pct};
  };

  // The keypad is not scanned while free running.
  if (s.mode == Mode::regulating) {
    for (const auto& key : keys) {
      if (std::holds_alternative<LearnKey>(key)) {
        s.learn_armed = !s.learn_armed;
        continue;
      }
      const SpeedClass k = std::get<DigitKey>(key).speed;
      if (s.learn_armed) {
        const TrainingPair pair{effective_now(), k};
        s.weights = update(s.weights, std::span(&pair, 1));
        s.learn_armed = false;
        r.trained.push_back(pair);
      }
      s.speed = k;
      r.manual_override = true;
    }
  }

  if (!s.epoch_temperature) {
    s.epoch_temperature = reading.temperature_c;
  } else if (std::abs(reading.temperature_c - *s.epoch_temperature) >= config.temperature_band_deg) {
    s.epoch_start = clock;
    s.epoch_temperature = reading.temperature_c;
  }

  r.effective = effective_now();
  if (s.mode == Mode::regulating && !r.manual_override) {
    s.speed = decide(s.weights, r.effective);
  }
  r.command = ActuationCommand{s.speed};
  return r;
}

}  // namespace coolctl

#include "coolctl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coolctl::sim {
namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw std::domain_error(std::string(name) + " must be finite");
}

}  // namespace

void PlantParams::validate() const {
  require_finite(outside_temp, "outside_temp");
  require_finite(k_env, "k_env");
  require_finite(humidity_drift, "humidity_drift");
  require_finite(humidity_target, "humidity_target");
  if (k_env < 0) throw std::domain_error("k_env must be >= 0");
  if (humidity_drift < 0) throw std::domain_error("humidity_drift must be >= 0");
  if (cool_rate[0] != 0.0) throw std::domain_error("cool_rate[0] must be 0");
  for (std::size_t s = 0; s < cool_rate.size(); ++s) {
    require_finite(cool_rate[s], "cool_rate");
    if (cool_rate[s] < 0) throw std::domain_error("cool_rate must be >= 0");
    if (s > 0 && cool_rate[s] < cool_rate[s - 1]) {
      throw std::domain_error("cool_rate must be non-decreasing in speed");
    }
  }
}

RoomState step_plant(const RoomState& room, SpeedClass speed, const PlantParams& params, double dt) {
  params.validate();
  require_finite(dt, "dt");
  require_finite(room.air_temp, "air_temp");
  require_finite(room.humidity, "humidity");
  if (dt <= 0) throw std::domain_error("dt must be positive");

  const double flux = params.k_env * (params.outside_temp - room.air_temp) -
                      params.cool_rate[static_cast<std::size_t>(speed.value())];
  RoomState next;
  next.air_temp = std::clamp(room.air_temp + dt * flux, kMinAirTemp, kMaxAirTemp);
  // Relaxation step limited to 1 so humidity never overshoots its target.
  const double alpha = std::min(1.0, dt * params.humidity_drift);
  next.humidity = std::clamp(room.humidity + alpha * (params.humidity_target - room.humidity), 0.0, 100.0);
  next.sim_time = room.sim_time + dt;
  return next;
}

void SensorModel::validate() const {
  if (adc_bits < 1 || adc_bits > 16) throw std::domain_error("adc_bits must be in [1, 16]");
  require_finite(degrees_per_count, "degrees_per_count");
  require_finite(noise_amplitude, "noise_amplitude");
  if (degrees_per_count <= 0) throw std::domain_error("degrees_per_count must be positive");
  if (noise_amplitude < 0) throw std::domain_error("noise_amplitude must be >= 0");
}

int quantize_temperature(double air_temp, const SensorModel& model) {
  const double max_count = std::ldexp(1.0, model.adc_bits) - 1.0;
  const double count = std::clamp(std::floor(air_temp / model.degrees_per_count), 0.0, max_count);
  const double degrees = std::floor(count * model.degrees_per_count);
  return static_cast<int>(std::clamp(degrees, 0.0, static_cast<double>(kFieldMax)));
}

Sensor::Sensor(SensorModel model) : model_(model), rng_(model.noise_seed) { model_.validate(); }

SensorReading Sensor::sense(const RoomState& room, int duration_min) {
  double t = room.air_temp;
  if (model_.noise_amplitude > 0) {
    std::uniform_real_distribution<double> noise(-model_.noise_amplitude, model_.noise_amplitude);
    t += noise(rng_);
  }
  const int humidity = static_cast<int>(std::clamp(std::round(room.humidity), 0.0, static_cast<double>(kFieldMax)));
  return {quantize_temperature(t, model_), duration_min, humidity};
}

void Scenario::validate() const {
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& b = breakpoints[i];
    require_finite(b.time_s, "time_s");
    require_finite(b.outside_temp_c, "outside_temp_c");
    require_finite(b.humidity_pct, "humidity_pct");
    if (i > 0 && b.time_s <= breakpoints[i - 1].time_s) {
      throw std::domain_error("scenario breakpoints must be strictly increasing in time (row " +
                              std::to_string(i + 1) + ")");
    }
  }
}

Trace run_scenario(const Scenario& scenario, const SimulationConfig& config, const WeightMatrix& weights) {
  scenario.validate();
  config.controller.validate();
  config.plant.validate();

  Trace trace;
  if (scenario.breakpoints.empty()) return trace;

  const double dt = std::chrono::duration<double>(config.controller.tick_interval).count();
  const double end = scenario.breakpoints.back().time_s;

  Sensor sensor(config.sensor);
  PlantParams plant = config.plant;
  RoomState room = config.initial;
  ControllerState state = init(config.controller, weights, Timestamp{0});

  // Breakpoint in force at time t; before the first one the configured plant
  // environment applies.
  auto apply_environment = [&](double t) {
    const auto& bps = scenario.breakpoints;
    auto it = std::upper_bound(bps.begin(), bps.end(), t,
                               [](double time, const Breakpoint& b) { return time < b.time_s; });
    if (it == bps.begin()) return;
    --it;
    plant.outside_temp = it->outside_temp_c;
    plant.humidity_target = it->humidity_pct;
  };

  for (std::int64_t n = 0;; ++n) {
    const Timestamp clock = config.controller.tick_interval * n;
    const double t = std::chrono::duration<double>(clock).count();
    if (t > end) break;

    const SensorReading sensed = sensor.sense(room);
    const TickResult r = tick(state, config.controller, sensed, {}, clock);
    state = r.state;
    trace.push_back({t, room, r.effective, state.speed});

    // The commanded speed holds over [t, t + dt).
    apply_environment(t);
    room = step_plant(room, state.speed, plant, dt);
  }
  return trace;
}

}  // namespace coolctl::sim

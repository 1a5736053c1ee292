#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "coolctl/controller.hpp"

namespace coolctl::sim {

inline constexpr double kMinAirTemp = -20.0;
inline constexpr double kMaxAirTemp = 80.0;

struct RoomState {
  double air_temp = 30.0;  // degC
  double humidity = 85.0;  // %RH
  double sim_time = 0.0;   // s

  friend bool operator==(const RoomState&, const RoomState&) = default;
};

struct PlantParams {
  double outside_temp = 30.0;
  /// Per-second coupling of the room to outside air.
  double k_env = 1.0 / 900.0;
  /// degC per second removed at each fan speed; cool_rate[0] is 0 and the
  /// array is non-decreasing.
  std::array<double, kSpeedClasses> cool_rate = {0.0, 2e-5, 4e-5, 6e-5, 8e-5, 1e-4};
  /// Per-second relaxation rate of humidity toward humidity_target.
  double humidity_drift = 1.0 / 600.0;
  double humidity_target = 85.0;

  /// Throws std::domain_error on non-finite values or a bad cooling table.
  void validate() const;
};

/// First-order plant: Newtonian coupling to outside air minus the fan's
/// cooling at the given speed, integrated with one explicit Euler step.
RoomState step_plant(const RoomState& room, SpeedClass speed, const PlantParams& params, double dt);

/// Behavioral ADC: the air temperature goes through an adc_bits-wide count at
/// degrees_per_count resolution, then is floored to whole degrees.
struct SensorModel {
  int adc_bits = 8;
  double degrees_per_count = 0.5;
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 1;

  void validate() const;
};

/// Stateful sensor front end; carries the noise generator so a run is
/// reproducible from its seed.
class Sensor {
 public:
  explicit Sensor(SensorModel model = {});

  /// Fills temperature and humidity. Duration is left at `duration_min`; the
  /// controller supplies its own.
  SensorReading sense(const RoomState& room, int duration_min = 0);
  const SensorModel& model() const { return model_; }

 private:
  SensorModel model_;
  std::mt19937_64 rng_;
};

/// Noise-free quantization of an air temperature.
int quantize_temperature(double air_temp, const SensorModel& model);

struct Breakpoint {
  double time_s = 0.0;
  double outside_temp_c = 0.0;
  double humidity_pct = 0.0;
};

/// Piecewise-constant environment: each breakpoint holds until the next one.
/// The run ends at the last breakpoint's time.
struct Scenario {
  std::vector<Breakpoint> breakpoints;
  /// Throws std::domain_error unless times are finite and strictly increasing.
  void validate() const;
};

struct SimulationConfig {
  ControllerConfig controller;
  PlantParams plant;
  SensorModel sensor;
  RoomState initial;
};

struct TraceRow {
  double time_s;
  RoomState room;
  SensorReading reading;  // effective reading the controller decided on
  SpeedClass speed;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

using Trace = std::vector<TraceRow>;

/// Steps sensor, controller and plant in lockstep at the controller's tick
/// interval, for ticks at t = 0, dt, 2 dt, ... up to the scenario's end time.
/// Each row holds the room as sensed at t and the speed commanded from t on.
Trace run_scenario(const Scenario& scenario, const SimulationConfig& config, const WeightMatrix& weights);

}  // namespace coolctl::sim

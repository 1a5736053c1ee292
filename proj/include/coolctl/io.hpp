#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coolctl/memory.hpp"
#include "coolctl/simulator.hpp"

namespace coolctl::io {

/// Malformed file content. `line()` is 1-based, 0 when not line specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Missing or unreadable file; the message names the path.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTrainingHeader = "temperature_c,duration_min,humidity_pct,speed";
inline constexpr const char* kScenarioHeader = "time_s,outside_temp_c,humidity_pct";
inline constexpr const char* kTraceHeader = "time_s,air_temp_c,humidity_pct,sensed_temp_c,duration_min,speed";
inline constexpr const char* kSurfaceHeader = "temperature_c,duration_min,speed";
inline constexpr const char* kEncodingTag = "lsb7-temp-dur-hum";
inline constexpr int kWeightsFormatVersion = 1;

std::vector<TrainingPair> parse_training_csv(std::istream& in, const std::string& source = "<stream>");
std::vector<TrainingPair> read_training_csv(const std::filesystem::path& path);
void write_training_csv(std::ostream& out, std::span<const TrainingPair> pairs);
/// Appends rows, writing the header first if the file is missing or empty.
void append_training_csv(const std::filesystem::path& path, std::span<const TrainingPair> pairs);

std::string weights_to_json(const WeightMatrix& w);
WeightMatrix weights_from_json(const std::string& text, const std::string& source = "<string>");
WeightMatrix read_weights(const std::filesystem::path& path);
void write_weights(const std::filesystem::path& path, const WeightMatrix& w);

sim::Scenario parse_scenario_csv(std::istream& in, const std::string& source = "<stream>");
sim::Scenario read_scenario_csv(const std::filesystem::path& path);
void write_trace_csv(std::ostream& out, const sim::Trace& trace);

/// Every key is optional; missing ones keep their defaults.
///   {"controller": {"tick_interval_s", "startup_grace_ticks", "temperature_band_deg", "duration_cap_min"},
///    "plant": {"outside_temp", "k_env", "cool_rate": [6], "humidity_drift", "humidity_target"},
///    "sensor": {"adc_bits", "degrees_per_count", "noise_amplitude", "noise_seed"},
///    "initial": {"air_temp", "humidity"}}
sim::SimulationConfig simulation_config_from_json(const std::string& text, const std::string& source = "<string>");
sim::SimulationConfig read_simulation_config(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames, so a failure never leaves
/// a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace coolctl::io

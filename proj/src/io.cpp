#include "coolctl/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace coolctl::io {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& cell, const std::string& source, std::size_t line, const char* column) {
  const std::string t = trim(cell);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError(source, line, std::string("column ") + column + ": '" + t + "' is not an integer");
  }
  return v;
}

double parse_double(const std::string& cell, const std::string& source, std::size_t line, const char* column) {
  const std::string t = trim(cell);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size() || !std::isfinite(v)) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, std::string("column ") + column + ": '" + t + "' is not a number");
  }
}

// Reads the header and yields the remaining non-blank lines with 1-based numbers.
template <typename RowFn>
void for_each_row(std::istream& in, const std::string& source, const char* header, std::size_t columns, RowFn fn) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  if (trim(line) != header) {
    throw ParseError(source, 1, "expected header '" + std::string(header) + "', got '" + trim(line) + "'");
  }
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(trim(line));
    if (cells.size() != columns) {
      throw ParseError(source, number,
                       "expected " + std::to_string(columns) + " cells, got " + std::to_string(cells.size()));
    }
    fn(cells, number);
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path.string() + "' for reading");
  return in;
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line) {}

std::vector<TrainingPair> parse_training_csv(std::istream& in, const std::string& source) {
  std::vector<TrainingPair> pairs;
  for_each_row(in, source, kTrainingHeader, 4, [&](const std::vector<std::string>& c, std::size_t line) {
    const SensorReading r{parse_int(c[0], source, line, "temperature_c"), parse_int(c[1], source, line, "duration_min"),
                          parse_int(c[2], source, line, "humidity_pct")};
    const int speed = parse_int(c[3], source, line, "speed");
    try {
      validate(r);
      pairs.push_back({r, SpeedClass(speed)});
    } catch (const std::domain_error& e) {
      throw ParseError(source, line, e.what());
    }
  });
  return pairs;
}

std::vector<TrainingPair> read_training_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_training_csv(in, path.string());
}

void write_training_csv(std::ostream& out, std::span<const TrainingPair> pairs) {
  out << kTrainingHeader << '\n';
  for (const auto& p : pairs) {
    out << p.reading.temperature_c << ',' << p.reading.duration_min << ',' << p.reading.humidity_pct << ','
        << p.speed.value() << '\n';
  }
}

void append_training_csv(const std::filesystem::path& path, std::span<const TrainingPair> pairs) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw FileError(path.string() + ": cannot open for append");
  if (fresh) out << kTrainingHeader << '\n';
  for (const auto& p : pairs) {
    out << p.reading.temperature_c << ',' << p.reading.duration_min << ',' << p.reading.humidity_pct << ','
        << p.speed.value() << '\n';
  }
  if (!out.flush()) throw FileError(path.string() + ": write failed");
}

std::string weights_to_json(const WeightMatrix& w) {
  // One matrix row per line keeps the file diffable.
  std::ostringstream out;
  out << "{\n  \"rows\": " << WeightMatrix::kRows << ",\n  \"cols\": " << WeightMatrix::kCols
      << ",\n  \"encoding\": \"" << kEncodingTag << "\",\n  \"version\": " << kWeightsFormatVersion
      << ",\n  \"data\": [\n";
  for (std::size_t i = 0; i < WeightMatrix::kRows; ++i) {
    out << "    [";
    for (std::size_t j = 0; j < WeightMatrix::kCols; ++j) out << (j ? ", " : "") << w.at(i, j);
    out << (i + 1 < WeightMatrix::kRows ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

WeightMatrix weights_from_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto rows = doc.at("rows").get<int>();
    const auto cols = doc.at("cols").get<int>();
    const auto encoding = doc.at("encoding").get<std::string>();
    const auto version = doc.at("version").get<int>();
    if (encoding != kEncodingTag) {
      throw ParseError(source, 0, "encoding '" + encoding + "' does not match '" + kEncodingTag + "'");
    }
    if (version != kWeightsFormatVersion) {
      throw ParseError(source, 0, "unsupported weights format version " + std::to_string(version));
    }
    if (rows != static_cast<int>(WeightMatrix::kRows) || cols != static_cast<int>(WeightMatrix::kCols)) {
      throw ParseError(source, 0, "declared shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                      " is not 21x6");
    }
    const auto data = doc.at("data").get<std::vector<std::vector<std::int64_t>>>();
    try {
      return WeightMatrix::from_rows(data);
    } catch (const std::domain_error& e) {
      throw ParseError(source, 0, e.what());
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("bad weights document: ") + e.what());
  }
}

WeightMatrix read_weights(const std::filesystem::path& path) { return weights_from_json(read_file(path), path.string()); }

void write_weights(const std::filesystem::path& path, const WeightMatrix& w) {
  write_file_atomic(path, weights_to_json(w));
}

sim::Scenario parse_scenario_csv(std::istream& in, const std::string& source) {
  sim::Scenario s;
  for_each_row(in, source, kScenarioHeader, 3, [&](const std::vector<std::string>& c, std::size_t line) {
    sim::Breakpoint b{parse_double(c[0], source, line, "time_s"), parse_double(c[1], source, line, "outside_temp_c"),
                      parse_double(c[2], source, line, "humidity_pct")};
    if (!s.breakpoints.empty() && b.time_s <= s.breakpoints.back().time_s) {
      throw ParseError(source, line, "time_s must be strictly increasing");
    }
    s.breakpoints.push_back(b);
  });
  return s;
}

sim::Scenario read_scenario_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_scenario_csv(in, path.string());
}

void write_trace_csv(std::ostream& out, const sim::Trace& trace) {
  out << kTraceHeader << '\n';
  char buf[160];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%.3f,%.6f,%.6f,%d,%d,%d\n", row.time_s, row.room.air_temp, row.room.humidity,
                  row.reading.temperature_c, row.reading.duration_min, row.speed.value());
    out << buf;
  }
}

sim::SimulationConfig simulation_config_from_json(const std::string& text, const std::string& source) {
  sim::SimulationConfig cfg;
  try {
    const json doc = json::parse(text);
    if (doc.contains("controller")) {
      const auto& c = doc.at("controller");
      if (c.contains("tick_interval_s")) {
        const double s = c.at("tick_interval_s").get<double>();
        cfg.controller.tick_interval = Timestamp{static_cast<std::int64_t>(std::llround(s * 1000.0))};
      }
      read_opt(c, "startup_grace_ticks", cfg.controller.startup_grace_ticks);
      read_opt(c, "temperature_band_deg", cfg.controller.temperature_band_deg);
      read_opt(c, "duration_cap_min", cfg.controller.duration_cap_min);
    }
    if (doc.contains("plant")) {
      const auto& p = doc.at("plant");
      read_opt(p, "outside_temp", cfg.plant.outside_temp);
      read_opt(p, "k_env", cfg.plant.k_env);
      read_opt(p, "cool_rate", cfg.plant.cool_rate);
      read_opt(p, "humidity_drift", cfg.plant.humidity_drift);
      read_opt(p, "humidity_target", cfg.plant.humidity_target);
    }
    if (doc.contains("sensor")) {
      const auto& s = doc.at("sensor");
      read_opt(s, "adc_bits", cfg.sensor.adc_bits);
      read_opt(s, "degrees_per_count", cfg.sensor.degrees_per_count);
      read_opt(s, "noise_amplitude", cfg.sensor.noise_amplitude);
      read_opt(s, "noise_seed", cfg.sensor.noise_seed);
    }
    if (doc.contains("initial")) {
      const auto& r = doc.at("initial");
      read_opt(r, "air_temp", cfg.initial.air_temp);
      read_opt(r, "humidity", cfg.initial.humidity);
    }
  } catch (const json::exception& e) {
    throw ParseError(source, 0, std::string("bad simulation config: ") + e.what());
  }
  try {
    cfg.controller.validate();
    cfg.plant.validate();
    cfg.sensor.validate();
  } catch (const std::domain_error& e) {
    throw ParseError(source, 0, e.what());
  }
  return cfg;
}

sim::SimulationConfig read_simulation_config(const std::filesystem::path& path) {
  return simulation_config_from_json(read_file(path), path.string());
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FileError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw FileError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw FileError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace coolctl::io

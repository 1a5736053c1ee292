// coolctl: train, query and exercise the fan-speed associative memory.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parse / I/O error.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coolctl/io.hpp"
#include "coolctl/memory.hpp"
#include "coolctl/reference_data.hpp"
#include "coolctl/reproduce.hpp"
#include "coolctl/service.hpp"
#include "coolctl/simulator.hpp"

namespace {

using namespace coolctl;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "reference", "zero", or a weights file path.
WeightMatrix load_weights(const std::string& source) {
  if (source == "reference") return reference::reference_matrix();
  if (source == "zero") return zero_matrix();
  return io::read_weights(source);
}

void check_range(const char* name, int v) {
  if (v < 0 || v > kFieldMax) {
    throw UsageError(std::string(name) + " must be in [0, 127], got " + std::to_string(v));
  }
}

int cmd_train(const std::string& data, const std::string& base, const std::string& out) {
  const auto pairs = io::read_training_csv(data);
  const WeightMatrix w = base == "none" ? train_batch(pairs) : update(load_weights(base), pairs);
  io::write_weights(out, w);
  std::cout << "pairs " << pairs.size() << '\n';
  return kExitOk;
}

int cmd_decide(const std::string& weights, int temp, int duration, int humidity, bool show_net) {
  check_range("--temp", temp);
  check_range("--duration", duration);
  check_range("--humidity", humidity);
  const WeightMatrix w = load_weights(weights);
  const SensorReading r{temp, duration, humidity};
  const NetInput y = net_input(w, encode_reading(r));
  if (show_net) std::cout << to_string(y) << '\n';
  std::cout << activate(y).speed().value() << '\n';
  return kExitOk;
}

int cmd_reproduce(const std::string& data_dir) {
  const auto report = run_reproduction(data_dir);
  report.print(std::cout);
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

int cmd_surface(const std::string& weights, int humidity, const std::string& out) {
  check_range("--humidity", humidity);
  const WeightMatrix w = load_weights(weights);
  std::vector<SensorReading> grid;
  for (int t = 15; t <= 41; ++t) {
    for (int d = 0; d <= 70; ++d) grid.push_back({t, d, humidity});
  }
  const auto speeds = decide_all(w, grid);
  std::ostringstream csv;
  csv << io::kSurfaceHeader << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << grid[i].temperature_c << ',' << grid[i].duration_min << ',' << speeds[i].value() << '\n';
  }
  io::write_file_atomic(out, csv.str());
  std::cout << "points " << grid.size() << '\n';
  return kExitOk;
}

int cmd_simulate(const std::string& scenario_path, const std::string& weights, const std::string& config_path,
                 const std::string& out) {
  const auto scenario = io::read_scenario_csv(scenario_path);
  const auto config = config_path.empty() ? sim::SimulationConfig{} : io::read_simulation_config(config_path);
  const auto trace = sim::run_scenario(scenario, config, load_weights(weights));
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  io::write_file_atomic(out, csv.str());
  std::cout << "ticks " << trace.size() << '\n';
  return kExitOk;
}

int cmd_serve(const std::string& host, int port, const std::string& weights, const std::string& config_path,
              int tick_ms, const std::string& training_log) {
  if (port < 0 || port > 65535) throw UsageError("--port must be in [0, 65535]");
  service::SessionConfig cfg;
  if (!config_path.empty()) cfg.sim = io::read_simulation_config(config_path);
  cfg.weights = load_weights(weights);
  cfg.training_log = training_log;
  cfg.tick_period = tick_ms > 0 ? std::chrono::milliseconds(tick_ms)
                                : std::chrono::duration_cast<std::chrono::milliseconds>(cfg.sim.controller.tick_interval);

  // Block the stop signals before any thread starts so only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Session session(cfg);
  service::Server server(session, host, port);
  server.start(cfg.tick_period);
  std::cout << "listening on http://" << host << ':' << server.port() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive fan-speed controller built on a hetero-associative memory"};
  app.require_subcommand(1);

  std::string data, base = "none", out, weights = "reference", data_dir = COOLCTL_DATA_DIR, scenario, config;
  std::string host = service::kDefaultHost;
  std::string training_log;
  int temp = 0, duration = 0, humidity = 85, port = service::kDefaultPort, tick_ms = 0;
  bool show_net = false;

  auto* train = app.add_subcommand("train", "Build a weight matrix from a training CSV");
  train->add_option("--data", data, "Training CSV (temperature_c,duration_min,humidity_pct,speed)")->required();
  train->add_option("--base", base, "Starting weights: file, 'reference', or 'none'")->capture_default_str();
  train->add_option("--out", out, "Output weights JSON")->required();

  auto* decide_cmd = app.add_subcommand("decide", "Decide the fan speed for one reading");
  decide_cmd->add_option("--weights", weights, "Weights file, 'reference' or 'zero'")->capture_default_str();
  decide_cmd->add_option("--temp", temp, "Temperature in degC")->required();
  decide_cmd->add_option("--duration", duration, "Duration in minutes")->required();
  decide_cmd->add_option("--humidity", humidity, "Relative humidity in %")->required();
  decide_cmd->add_flag("--show-net", show_net, "Also print the six net inputs");

  auto* reproduce = app.add_subcommand("reproduce", "Re-derive the published matrix and decisions");
  reproduce->add_option("--data-dir", data_dir, "Directory holding table1.csv and table2.csv")->capture_default_str();

  auto* surface = app.add_subcommand("surface", "Export the decision surface over temperature x duration");
  surface->add_option("--weights", weights, "Weights file, 'reference' or 'zero'")->capture_default_str();
  surface->add_option("--humidity", humidity, "Fixed humidity")->capture_default_str();
  surface->add_option("--out", out, "Output CSV")->required();

  auto* simulate = app.add_subcommand("simulate", "Run a closed-loop scenario");
  simulate->add_option("--scenario", scenario, "Scenario CSV (time_s,outside_temp_c,humidity_pct)")->required();
  simulate->add_option("--weights", weights, "Weights file, 'reference' or 'zero'")->capture_default_str();
  simulate->add_option("--config", config, "Simulation config JSON");
  simulate->add_option("--out", out, "Output trace CSV")->required();

  auto* serve = app.add_subcommand("serve", "Run the live controller behind the HTTP interface");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Bind port")->capture_default_str();
  serve->add_option("--weights", weights, "Initial weights: file, 'reference' or 'zero'")->capture_default_str();
  serve->add_option("--config", config, "Simulation config JSON");
  serve->add_option("--tick-ms", tick_ms, "Wall-clock ms per tick (default: the controller tick interval)");
  serve->add_option("--training-log", training_log, "Append keypad-trained pairs to this training CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*train) return cmd_train(data, base, out);
    if (*decide_cmd) return cmd_decide(weights, temp, duration, humidity, show_net);
    if (*reproduce) return cmd_reproduce(data_dir);
    if (*surface) return cmd_surface(weights, humidity, out);
    if (*simulate) return cmd_simulate(scenario, weights, config, out);
    if (*serve) return cmd_serve(host, port, weights, config, tick_ms, training_log);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

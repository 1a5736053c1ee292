// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance [--coolctl <path to coolctl binary>]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coolctl/controller.hpp"
#include "coolctl/io.hpp"
#include "coolctl/memory.hpp"
#include "coolctl/reference_data.hpp"
#include "coolctl/reproduce.hpp"
#include "coolctl/simulator.hpp"
#include "oracle.hpp"

using namespace coolctl;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail = what;
    passed = passed && ok;
  }
};

struct Criterion {
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

std::string coolctl_binary;

std::vector<TrainingPair> pairs_of(const std::vector<oracle::Row>& rows) {
  std::vector<TrainingPair> out;
  for (const auto& r : rows) out.push_back({{r.temperature, r.duration, r.humidity}, SpeedClass(r.speed)});
  return out;
}

bool equals_oracle(const WeightMatrix& w, const oracle::Matrix& m) {
  for (std::size_t i = 0; i < 21; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (w.at(i, j) != m[i][j]) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Outcome encoding_golden() {
  Outcome o;
  for (const auto& t : reference::transcripts()) {
    const auto v = encode_reading(t.reading);
    o.require(std::equal(t.bits.begin(), t.bits.end(), v.bits().begin()), "vector mismatch for " + to_string(t.reading));
  }
  o.detail = o.passed ? "3 of 3 vectors bit-exact" : o.detail;
  return o;
}

Outcome matrix_reproduction() {
  Outcome o;
  const auto w = train_batch(reference::table1());
  const std::pair<std::size_t, std::array<std::int32_t, 6>> anchors[] = {
      {0, {1, 2, 0, 0, 0, -3}},      {6, {-7, -8, -8, -8, -8, -9}},  {9, {7, -6, 8, -2, 6, 3}},
      {10, {7, 6, 2, 4, -4, 1}},     {14, {7, 8, 8, 8, 8, 9}},       {15, {-7, -8, -8, -8, -8, -9}},
  };
  for (const auto& [row, values] : anchors) {
    o.require(w.row(row) == values, "anchor row " + std::to_string(row + 1) + " differs");
  }
  o.require(equals_oracle(w, oracle::train(oracle::table1())), "full matrix differs from brute-force oracle");
  o.detail = o.passed ? "6 anchor rows + 126 entries exact" : o.detail;
  return o;
}

Outcome decision_transcripts() {
  Outcome o;
  const auto w = train_batch(reference::table1());
  const NetInput expected_net[] = {{57, 32, 60, 44, 42, 33}, {14, 14, 20, 24, 18, 28}, {50, 54, 44, 46, 28, 26}};
  const SensorReading readings[] = {{28, 60, 85}, {40, 10, 85}, {17, 40, 85}};
  const int expected_class[] = {2, 5, 1};
  for (int n = 0; n < 3; ++n) {
    const auto y = net_input(w, encode_reading(readings[n]));
    o.require(y == expected_net[n], "net input " + to_string(y) + " for " + to_string(readings[n]));
    o.require(activate(y).speed().value() == expected_class[n], "class mismatch for " + to_string(readings[n]));
  }
  o.detail = o.passed ? "nets and classes 2, 5, 1 exact" : o.detail;
  return o;
}

Outcome runtime_training() {
  Outcome o;
  ControllerConfig cfg;
  cfg.startup_grace_ticks = 0;
  const auto& base = reference::reference_matrix();
  ControllerState s = init(cfg, base, Timestamp{0});
  s = tick(s, cfg, {30, 0, 85}, {}, Timestamp{0}).state;  // anchors the epoch at 30 degC

  // Table 2 pressed on the keypad at 20, 40 and 60 minutes into the epoch.
  for (const auto& p : reference::table2()) {
    const KeyEvent keys[] = {LearnKey{}, DigitKey{p.speed}};
    const auto r = tick(s, cfg, {30, p.reading.duration_min, 85}, keys, std::chrono::minutes(p.reading.duration_min));
    o.require(r.effective == p.reading, "effective reading " + to_string(r.effective));
    o.require(r.trained.size() == 1, "keypad did not train");
    s = r.state;
  }

  // Straight-line summation over Table 2 alone gives the expected change per entry.
  const auto delta = oracle::train(oracle::table2());
  int changed = 0, expected_changed = 0;
  for (std::size_t i = 0; i < 21; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      o.require(s.weights.at(i, j) - base.at(i, j) == delta[i][j], "entry change differs from oracle");
      changed += s.weights.at(i, j) != base.at(i, j);
      expected_changed += delta[i][j] != 0;
    }
  }
  auto all = oracle::table1();
  all.insert(all.end(), oracle::table2().begin(), oracle::table2().end());
  o.require(s.weights == train_batch(pairs_of(all)), "keypad result differs from batch Table 1 + Table 2");
  o.require(s.weights.row(14) == reference::kHumidityBit1AfterTable2, "humidity-bit-1 row");
  if (o.passed) o.detail = std::to_string(changed) + " entries changed (oracle: " + std::to_string(expected_changed) + ")";
  return o;
}

Outcome property_suite() {
  Outcome o;
  constexpr int kCases = 200;
  std::mt19937_64 rng(20260214);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto reading = [&] { return SensorReading{uni(0, 127), uni(0, 127), uni(0, 127)}; };
  auto pairs = [&] {
    std::vector<TrainingPair> p(static_cast<std::size_t>(uni(0, 30)));
    for (auto& x : p) x = {reading(), SpeedClass(uni(0, 5))};
    return p;
  };
  auto matrix = [&] {
    std::vector<std::vector<std::int64_t>> rows(21, std::vector<std::int64_t>(6));
    for (auto& r : rows) {
      for (auto& v : r) v = uni(-50, 50);
    }
    return WeightMatrix::from_rows(rows);
  };
  int counts[6] = {};

  for (int n = 0; n < kCases; ++n) {
    auto p = pairs();
    const auto w = train_batch(p);
    std::shuffle(p.begin(), p.end(), rng);
    o.require(train_batch(p) == w, "order independence");
    ++counts[0];

    const auto a = pairs(), b = pairs();
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    o.require(update(train_batch(a), b) == train_batch(ab), "incremental = batch");
    ++counts[1];

    const auto r = reading();
    o.require(decode_vector(encode_reading(r)) == r, "round trip");
    ++counts[2];

    const auto m = matrix();
    const auto x = encode_reading(reading());
    o.require(activate(net_input(m.scaled(uni(1, 500)), x)) == activate(net_input(m, x)), "argmax scaling");
    ++counts[3];

    NetInput y{};
    for (auto& v : y) v = uni(-2, 2);
    const auto t = activate(y);
    o.require(std::count(t.bits().begin(), t.bits().end(), 1) == 1, "one-hot cardinality");
    ++counts[4];

    ControllerConfig cfg;
    cfg.startup_grace_ticks = uni(0, 2);
    auto s = init(cfg, m, Timestamp{0});
    for (int k = 1; k <= 3; ++k) s = tick(s, cfg, reading(), {}, cfg.tick_interval * k).state;
    const KeyEvent keys[] = {LearnKey{}, DigitKey{SpeedClass(uni(0, 5))}};
    const auto rd = reading();
    const auto r1 = tick(s, cfg, rd, keys, cfg.tick_interval * 4);
    const auto r2 = tick(s, cfg, rd, keys, cfg.tick_interval * 4);
    o.require(r1.state == r2.state && r1.command == r2.command, "tick determinism");
    const auto before = s;
    bool threw = false;
    try {
      tick(s, cfg, {uni(128, 255), 0, 85}, keys, cfg.tick_interval * 4);
    } catch (const std::domain_error&) {
      threw = true;
    }
    o.require(threw && s == before, "fail-safe tick");
    ++counts[5];
  }
  o.require(*std::min_element(std::begin(counts), std::end(counts)) >= 100, "fewer than 100 cases");
  if (o.passed) o.detail = "6 properties x " + std::to_string(kCases) + " cases";
  return o;
}

Outcome recall_constant() {
  Outcome o;
  const double rate = recall_rate(reference::reference_matrix(), reference::table1());
  o.require(rate == reference::kTable1RecallRate && reference::kTable1RecallHits == 36, "recall rate changed");
  const auto report = run_reproduction(COOLCTL_DATA_DIR);
  std::ostringstream out;
  report.print(out);
  o.require(out.str().find("table 1 recall (hits of rows): 36/48") != std::string::npos, "reproduce does not report it");
  if (o.passed) o.detail = "36/48 = 0.75 frozen and reported";
  return o;
}

Outcome closed_loop_hot() {
  Outcome o;
  const fs::path base = fs::path(COOLCTL_DATA_DIR) / "scenarios";
  const auto cfg = io::read_simulation_config(base / "constant_39c.json");
  const auto trace = sim::run_scenario(io::read_scenario_csv(base / "constant_39c.csv"), cfg, reference::reference_matrix());
  o.require(!trace.empty(), "empty trace");
  const auto grace = static_cast<std::size_t>(cfg.controller.startup_grace_ticks);
  for (std::size_t n = 0; n < trace.size(); ++n) {
    o.require(trace[n].speed.value() == 5, "speed left 5 at t=" + std::to_string(trace[n].time_s));
  }
  o.require(trace.size() > grace + 1, "scenario shorter than the grace period");
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  o.require(csv.str() == io::read_file(fs::path(COOLCTL_FIXTURE_DIR) / "constant_39c_trace.csv"), "trace fixture");
  if (o.passed) o.detail = std::to_string(trace.size()) + " ticks at speed 5";
  return o;
}

Outcome closed_loop_cold() {
  Outcome o;
  const fs::path base = fs::path(COOLCTL_DATA_DIR) / "scenarios";
  const auto cfg = io::read_simulation_config(base / "converge_17c.json");
  const auto trace = sim::run_scenario(io::read_scenario_csv(base / "converge_17c.csv"), cfg, reference::reference_matrix());
  std::optional<double> reached;
  for (const auto& row : trace) {
    if (row.reading.temperature_c == 17 && row.reading.duration_min >= 60) {
      if (!reached) reached = row.time_s;
      o.require(row.speed.value() == 0, "speed not 0 at 17 degC / 60 min");
    }
  }
  o.require(reached.has_value(), "never held 17 degC for 60 minutes");
  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  o.require(csv.str() == io::read_file(fs::path(COOLCTL_FIXTURE_DIR) / "converge_17c_trace.csv"), "trace fixture");
  if (o.passed) o.detail = "speed 0 from t=" + std::to_string(static_cast<int>(*reached)) + " s";
  return o;
}

Outcome reproduce_gate() {
  Outcome o;
  const fs::path data = COOLCTL_DATA_DIR;
  const fs::path work = fs::temp_directory_path() / "coolctl_acceptance";
  fs::create_directories(work);
  fs::copy_file(data / "table2.csv", work / "table2.csv", fs::copy_options::overwrite_existing);
  const auto rows = io::read_training_csv(data / "table1.csv");

  // Every single-cell fault: each of the 4 cells of each row nudged by one.
  int detected = 0, injected = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int cell = 0; cell < 4; ++cell) {
      auto faulty = rows;
      auto& p = faulty[r];
      switch (cell) {
        case 0: p.reading.temperature_c += 1; break;
        case 1: p.reading.duration_min += 1; break;
        case 2: p.reading.humidity_pct -= 1; break;
        case 3: p.speed = SpeedClass((p.speed.value() + 1) % 6); break;
      }
      std::ofstream out(work / "table1.csv");
      io::write_training_csv(out, faulty);
      out.close();
      ++injected;
      detected += !run_reproduction(work).all_passed();
    }
  }
  o.require(detected == injected, std::to_string(injected - detected) + " faults went undetected");
  o.require(run_reproduction(data).all_passed(), "pristine data fails in-process");

  if (!coolctl_binary.empty()) {
    const auto quiet = " > " + (work / "out.txt").string() + " 2>&1";
    const int pristine = std::system(("\"" + coolctl_binary + "\" reproduce --data-dir \"" + data.string() + "\"" + quiet).c_str());
    o.require(pristine == 0, "coolctl reproduce failed on pristine data");
    // Leave the last injected fault in place.
    const int faulty = std::system(("\"" + coolctl_binary + "\" reproduce --data-dir \"" + work.string() + "\"" + quiet).c_str());
    o.require(faulty != 0, "coolctl reproduce accepted a corrupted table");
  }
  if (o.passed) {
    o.detail = std::to_string(detected) + "/" + std::to_string(injected) + " faults detected" +
               (coolctl_binary.empty() ? " (in-process only)" : ", CLI exit codes verified");
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--coolctl") coolctl_binary = argv[i + 1];
  }

  const std::vector<Criterion> criteria = {
      {"encoding golden vectors", 1.0, encoding_golden},
      {"weight matrix reproduction", 1.0, matrix_reproduction},
      {"decision transcripts", 1.0, decision_transcripts},
      {"runtime training via keypad", 1.0, runtime_training},
      {"property suite", 10.0, property_suite},
      {"training-set recall constant", 1.0, recall_constant},
      {"closed loop: constant 39 degC holds speed 5", 5.0, closed_loop_hot},
      {"closed loop: converging to 17 degC reaches speed 0", 5.0, closed_loop_cold},
      {"reproduce gate: pristine passes, faults fail", 10.0, reproduce_gate},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed > c.limit_s) o.require(false, "took " + std::to_string(elapsed) + " s");
    std::printf("%s  %-52s %7.3f s  %s\n", o.passed ? "PASS" : "FAIL", c.name.c_str(), elapsed, o.detail.c_str());
    failed += !o.passed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

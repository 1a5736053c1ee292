#include "coolctl/reproduce.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <sstream>

#include "coolctl/controller.hpp"
#include "coolctl/io.hpp"
#include "coolctl/reference_data.hpp"

namespace coolctl {
namespace {

template <typename Seq>
std::string join(const Seq& seq) {
  std::ostringstream out;
  bool first = true;
  for (const auto& v : seq) {
    out << (first ? "" : " ") << static_cast<long long>(v);
    first = false;
  }
  return out.str();
}

template <typename A, typename B>
Check compare(std::string name, const A& expected, const B& actual) {
  const bool ok = std::equal(std::begin(expected), std::end(expected), std::begin(actual), std::end(actual),
                             [](auto a, auto b) { return static_cast<long long>(a) == static_cast<long long>(b); });
  std::string detail = ok ? join(actual) : "expected [" + join(expected) + "] actual [" + join(actual) + "]";
  return {std::move(name), ok, std::move(detail)};
}

// The runtime path: one Learn + Digit sequence per pair, each pressed when the
// controller's duration epoch has run for exactly the pair's duration.
WeightMatrix train_through_keypad(const WeightMatrix& base, std::span<const TrainingPair> pairs) {
  ControllerConfig cfg;
  cfg.startup_grace_ticks = 0;
  cfg.duration_cap_min = kFieldMax;
  WeightMatrix w = base;
  for (const auto& p : pairs) {
    ControllerState s = init(cfg, w, Timestamp{0});
    const KeyEvent keys[] = {LearnKey{}, DigitKey{p.speed}};
    const Timestamp at = std::chrono::minutes(p.reading.duration_min);
    const auto r = tick(s, cfg, p.reading, keys, at);
    w = r.state.weights;
  }
  return w;
}

}  // namespace

bool ReproductionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void ReproductionReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  out << passed << " of " << checks.size() << " checks passed\n";
}

ReproductionReport run_reproduction(const std::filesystem::path& data_dir) {
  const auto table1 = io::read_training_csv(data_dir / "table1.csv");
  const auto table2 = io::read_training_csv(data_dir / "table2.csv");

  ReproductionReport report;
  auto& checks = report.checks;

  for (const auto& t : reference::transcripts()) {
    const auto v = encode_reading(t.reading);
    checks.push_back(compare("encode " + to_string(t.reading), t.bits, v.bits()));
  }

  const WeightMatrix w = train_batch(table1);
  for (const auto& a : reference::anchor_rows()) {
    checks.push_back(compare("anchor row " + std::string(a.label), a.values, w.row(a.row)));
  }
  {
    const bool ok = w == reference::reference_matrix();
    std::string detail;
    if (!ok) {
      for (std::size_t i = 0; i < WeightMatrix::kRows; ++i) {
        if (w.row(i) != reference::reference_matrix().row(i)) {
          detail += "row " + std::to_string(i + 1) + " expected [" + join(reference::reference_matrix().row(i)) +
                    "] actual [" + join(w.row(i)) + "]; ";
        }
      }
    }
    checks.push_back({"full 21x6 matrix", ok, detail});
  }

  for (const auto& t : reference::transcripts()) {
    const auto y = net_input(w, encode_reading(t.reading));
    checks.push_back(compare("net input " + to_string(t.reading), t.net, y));
  }
  for (const auto& t : reference::transcripts()) {
    const int expected[] = {t.speed};
    const int actual[] = {decide(w, t.reading).value()};
    checks.push_back(compare("decision " + to_string(t.reading), expected, actual));
  }

  const WeightMatrix incremental = update(w, table2);
  checks.push_back(compare("table 2 update humidity-bit-1", reference::kHumidityBit1AfterTable2, incremental.row(14)));
  {
    std::vector<TrainingPair> both(table1.begin(), table1.end());
    both.insert(both.end(), table2.begin(), table2.end());
    const bool ok = incremental == train_batch(both);
    checks.push_back({"table 2 incremental equals batch", ok, ok ? "" : "matrices differ"});
  }
  {
    const bool ok = train_through_keypad(w, table2) == incremental;
    checks.push_back({"table 2 via keypad learn path", ok, ok ? "" : "keypad-trained matrix differs"});
  }

  {
    const auto rec = recall(w, table1);
    const std::size_t expected[] = {reference::kTable1RecallHits, reference::kTable1Rows};
    const std::size_t actual[] = {rec.hits, rec.total};
    auto c = compare("table 1 recall (hits of rows)", expected, actual);
    if (c.passed) {
      std::ostringstream rate;
      rate << rec.hits << "/" << rec.total << " = " << rec.rate();
      c.detail = rate.str();
    }
    checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace coolctl

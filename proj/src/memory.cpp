#include "coolctl/memory.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace coolctl {

SpeedClass::SpeedClass(int value) : value_(value) {
  if (value < 0 || value > kMax) {
    throw std::domain_error("speed class " + std::to_string(value) + " is outside [0, 5]");
  }
}

TargetVector::TargetVector(SpeedClass s) { bits_[static_cast<std::size_t>(s.value())] = 1; }

TargetVector::TargetVector(std::span<const int> bits) {
  if (bits.size() != kSpeedClasses) {
    throw std::domain_error("target vector must have 6 elements");
  }
  int ones = 0;
  for (std::size_t j = 0; j < kSpeedClasses; ++j) {
    if (bits[j] != 0 && bits[j] != 1) throw std::domain_error("target vector must be binary");
    ones += bits[j];
    bits_[j] = static_cast<std::uint8_t>(bits[j]);
  }
  if (ones != 1) throw std::domain_error("target vector must be one-hot");
}

SpeedClass TargetVector::speed() const {
  for (std::size_t j = 0; j < kSpeedClasses; ++j) {
    if (bits_[j]) return SpeedClass(static_cast<int>(j));
  }
  throw std::logic_error("target vector has no set bit");
}

WeightMatrix WeightMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.size() != kRows) {
    throw std::domain_error("weight matrix must have 21 rows, got " + std::to_string(rows.size()));
  }
  WeightMatrix w;
  for (std::size_t i = 0; i < kRows; ++i) {
    if (rows[i].size() != kCols) {
      throw std::domain_error("weight matrix row " + std::to_string(i) + " must have 6 columns, got " +
                              std::to_string(rows[i].size()));
    }
    for (std::size_t j = 0; j < kCols; ++j) {
      const std::int64_t v = rows[i][j];
      if (v < INT32_MIN / 32 || v > INT32_MAX / 32) {
        throw std::domain_error("weight entry out of range at row " + std::to_string(i));
      }
      w.cells_[i * kernels::kLanes + j] = static_cast<std::int32_t>(v);
    }
  }
  return w;
}

WeightMatrix WeightMatrix::from_array(const std::array<std::array<std::int32_t, kCols>, kRows>& rows) {
  WeightMatrix w;
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kCols; ++j) w.cells_[i * kernels::kLanes + j] = rows[i][j];
  }
  return w;
}

std::array<std::int32_t, WeightMatrix::kCols> WeightMatrix::row(std::size_t r) const {
  std::array<std::int32_t, kCols> out{};
  for (std::size_t j = 0; j < kCols; ++j) out[j] = at(r, j);
  return out;
}

std::vector<std::vector<std::int64_t>> WeightMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> rows(kRows, std::vector<std::int64_t>(kCols));
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kCols; ++j) rows[i][j] = at(i, j);
  }
  return rows;
}

WeightMatrix WeightMatrix::scaled(std::int32_t c) const {
  WeightMatrix w = *this;
  for (auto& v : w.cells_) v *= c;
  return w;
}

WeightMatrix zero_matrix() { return WeightMatrix{}; }

WeightMatrix update(const WeightMatrix& w, std::span<const TrainingPair> pairs) {
  // Encode everything first so an invalid pair leaves nothing half applied.
  std::vector<BipolarVector> inputs;
  inputs.reserve(pairs.size());
  for (const auto& p : pairs) inputs.push_back(to_bipolar(encode_reading(p.reading)));

  const auto& k = kernels::active_kernels();
  WeightMatrix out = w;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    alignas(32) std::int32_t target[kernels::kLanes] = {};
    target[pairs[n].speed.value()] = 1;
    k.accumulate_outer(out.lanes(), inputs[n].data(), target);
  }
  return out;
}

WeightMatrix train_batch(std::span<const TrainingPair> pairs) { return update(zero_matrix(), pairs); }

NetInput net_input(const WeightMatrix& w, const InputVector& x) {
  alignas(32) std::int32_t lanes[kernels::kLanes];
  kernels::active_kernels().net_input(w.lanes(), x.data(), lanes);
  NetInput y{};
  for (std::size_t j = 0; j < kSpeedClasses; ++j) y[j] = lanes[j];
  return y;
}

NetInput net_input(const WeightMatrix& w, std::span<const int> x) { return net_input(w, InputVector(x)); }

TargetVector activate(const NetInput& y) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < kSpeedClasses; ++j) {
    if (y[j] > y[best]) best = j;
  }
  return TargetVector(SpeedClass(static_cast<int>(best)));
}

SpeedClass decide(const WeightMatrix& w, const SensorReading& r) {
  return activate(net_input(w, encode_reading(r))).speed();
}

std::vector<SpeedClass> decide_all(const WeightMatrix& w, std::span<const SensorReading> readings) {
  std::vector<std::uint8_t> bits(readings.size() * kInputBits);
  for (std::size_t n = 0; n < readings.size(); ++n) {
    const auto v = encode_reading(readings[n]);
    std::copy(v.bits().begin(), v.bits().end(), bits.begin() + static_cast<std::ptrdiff_t>(n * kInputBits));
  }
  std::vector<std::int32_t> lanes(readings.size() * kernels::kLanes);
  kernels::active_kernels().net_input_batch(w.lanes(), bits.data(), readings.size(), lanes.data());

  std::vector<SpeedClass> out;
  out.reserve(readings.size());
  for (std::size_t n = 0; n < readings.size(); ++n) {
    NetInput y{};
    for (std::size_t j = 0; j < kSpeedClasses; ++j) y[j] = lanes[n * kernels::kLanes + j];
    out.push_back(activate(y).speed());
  }
  return out;
}

RecallReport recall(const WeightMatrix& w, std::span<const TrainingPair> pairs) {
  std::vector<SensorReading> readings;
  readings.reserve(pairs.size());
  for (const auto& p : pairs) readings.push_back(p.reading);
  const auto decided = decide_all(w, readings);

  RecallReport report;
  report.total = pairs.size();
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    if (decided[n] == pairs[n].speed) {
      ++report.hits;
    } else {
      report.misses.push_back(n);
    }
  }
  return report;
}

double recall_rate(const WeightMatrix& w, std::span<const TrainingPair> pairs) {
  if (pairs.empty()) throw std::domain_error("recall rate needs at least one pair");
  return recall(w, pairs).rate();
}

std::string to_string(const NetInput& y) {
  std::string out;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (j) out += ' ';
    out += std::to_string(y[j]);
  }
  return out;
}

std::string to_string(const TargetVector& t) {
  std::string out;
  for (std::size_t j = 0; j < kSpeedClasses; ++j) {
    if (j) out += ' ';
    out += static_cast<char>('0' + t[j]);
  }
  return out;
}

}  // namespace coolctl

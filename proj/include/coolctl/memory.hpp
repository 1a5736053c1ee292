#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coolctl/encoding.hpp"
#include "coolctl/kernels.hpp"

namespace coolctl {

inline constexpr std::size_t kSpeedClasses = 6;

/// Fan speed 0 (off) .. 5 (maximum).
class SpeedClass {
 public:
  static constexpr int kMax = 5;

  constexpr SpeedClass() = default;
  /// Throws std::domain_error outside [0, 5].
  explicit SpeedClass(int value);

  constexpr int value() const { return value_; }
  friend constexpr bool operator==(SpeedClass, SpeedClass) = default;

 private:
  int value_ = 0;
};

/// One-hot over the six speed classes, position k = class k.
class TargetVector {
 public:
  explicit TargetVector(SpeedClass s);
  /// Throws std::domain_error unless exactly one of 6 elements is 1 and the
  /// rest are 0.
  explicit TargetVector(std::span<const int> bits);

  std::uint8_t operator[](std::size_t j) const { return bits_[j]; }
  SpeedClass speed() const;
  const std::array<std::uint8_t, kSpeedClasses>& bits() const { return bits_; }

  friend bool operator==(const TargetVector&, const TargetVector&) = default;

 private:
  std::array<std::uint8_t, kSpeedClasses> bits_{};
};

/// Y_j, the net input to each output unit.
using NetInput = std::array<std::int32_t, kSpeedClasses>;

struct TrainingPair {
  SensorReading reading;
  SpeedClass speed;

  friend bool operator==(const TrainingPair&, const TrainingPair&) = default;
};

/// 21 x 6 signed integer associative memory. Rows are input-bit positions,
/// columns are speed classes.
class WeightMatrix {
 public:
  static constexpr std::size_t kRows = kInputBits;
  static constexpr std::size_t kCols = kSpeedClasses;

  WeightMatrix() = default;

  /// Throws std::domain_error unless `rows` is exactly 21 rows of 6.
  static WeightMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);
  static WeightMatrix from_array(const std::array<std::array<std::int32_t, kCols>, kRows>& rows);

  std::int32_t at(std::size_t row, std::size_t col) const { return cells_[row * kernels::kLanes + col]; }
  std::array<std::int32_t, kCols> row(std::size_t r) const;
  std::vector<std::vector<std::int64_t>> to_rows() const;

  /// Every entry multiplied by c.
  WeightMatrix scaled(std::int32_t c) const;

  /// Padded 21 x 8 storage consumed by the kernels.
  const std::int32_t* lanes() const { return cells_.data(); }
  std::int32_t* lanes() { return cells_.data(); }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  alignas(32) std::array<std::int32_t, kRows * kernels::kLanes> cells_{};
};

WeightMatrix zero_matrix();

/// Adds x_i * y_j for every pair, with x the bipolar input and y the one-hot
/// target. The input matrix is untouched.
WeightMatrix update(const WeightMatrix& w, std::span<const TrainingPair> pairs);
WeightMatrix train_batch(std::span<const TrainingPair> pairs);

/// x must be the binary (0/1) encoding.
NetInput net_input(const WeightMatrix& w, const InputVector& x);
/// Throws std::domain_error unless x has 21 binary elements.
NetInput net_input(const WeightMatrix& w, std::span<const int> x);

/// Winner take all; ties go to the lowest class.
TargetVector activate(const NetInput& y);

SpeedClass decide(const WeightMatrix& w, const SensorReading& r);
/// Batched decide over many readings.
std::vector<SpeedClass> decide_all(const WeightMatrix& w, std::span<const SensorReading> readings);

struct RecallReport {
  std::size_t hits = 0;
  std::size_t total = 0;
  std::vector<std::size_t> misses;  // indices into the pair list
  double rate() const { return static_cast<double>(hits) / static_cast<double>(total); }
};

RecallReport recall(const WeightMatrix& w, std::span<const TrainingPair> pairs);
/// Throws std::domain_error on an empty list.
double recall_rate(const WeightMatrix& w, std::span<const TrainingPair> pairs);

std::string to_string(const NetInput& y);
std::string to_string(const TargetVector& t);

}  // namespace coolctl

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "coolctl/memory.hpp"

// Published training data and the matrix they produce. Table 1 is the 48-row
// base training set at humidity 85; Table 2 is the three-row set entered on
// the keypad at runtime.
namespace coolctl::reference {

std::span<const TrainingPair> table1();
std::span<const TrainingPair> table2();

/// Table 1 trained from zero: 21 rows (temperature bits 1..7, duration bits
/// 1..7, humidity bits 1..7), 6 speed classes.
const WeightMatrix& reference_matrix();

/// A published matrix row used as a fixed anchor.
struct AnchorRow {
  std::string_view label;
  std::size_t row;  // 0-based row index
  std::array<std::int32_t, kSpeedClasses> values;
};
std::span<const AnchorRow> anchor_rows();

/// A published decision transcript: the reading, its input vector, the net
/// inputs, and the resulting class.
struct Transcript {
  SensorReading reading;
  std::array<int, kInputBits> bits;
  NetInput net;
  int speed;
};
std::span<const Transcript> transcripts();

/// Table 1 rows recalled correctly by reference_matrix().
inline constexpr std::size_t kTable1RecallHits = 36;
inline constexpr std::size_t kTable1Rows = 48;
inline constexpr double kTable1RecallRate =
    static_cast<double>(kTable1RecallHits) / static_cast<double>(kTable1Rows);

/// Humidity bit 1 is set in every Table 2 reading, so after the runtime
/// update that row gains one count in classes 2, 3 and 4.
inline constexpr std::array<std::int32_t, kSpeedClasses> kHumidityBit1AfterTable2 = {7, 8, 9, 9, 9, 9};

}  // namespace coolctl::reference

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace coolctl {

/// One sensed sample: room temperature, minutes spent under the current
/// thermal condition, and relative humidity. Every field must fit 7 bits.
struct SensorReading {
  int temperature_c = 0;
  int duration_min = 0;
  int humidity_pct = 0;

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

inline constexpr int kFieldBits = 7;
inline constexpr int kFieldMax = (1 << kFieldBits) - 1;
inline constexpr std::size_t kInputBits = 3 * kFieldBits;

/// Throws std::domain_error naming the offending field and the bound.
void validate(const SensorReading& r);

std::string to_string(const SensorReading& r);

/// 21 binary digits: three 7-bit blocks (temperature, duration, humidity),
/// each least-significant bit first.
class InputVector {
 public:
  InputVector() = default;
  /// Throws std::domain_error unless `bits` has 21 elements, all 0 or 1.
  explicit InputVector(std::span<const int> bits);

  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::size_t size() const { return bits_.size(); }
  const std::array<std::uint8_t, kInputBits>& bits() const { return bits_; }
  const std::uint8_t* data() const { return bits_.data(); }

  friend bool operator==(const InputVector&, const InputVector&) = default;

 private:
  friend InputVector encode_reading(const SensorReading& r);
  std::array<std::uint8_t, kInputBits> bits_{};
};

/// The same 21 positions mapped onto {-1, +1}; used as the training input.
class BipolarVector {
 public:
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }
  const std::int8_t* data() const { return values_.data(); }

  friend bool operator==(const BipolarVector&, const BipolarVector&) = default;

 private:
  friend BipolarVector to_bipolar(const InputVector& v);
  std::array<std::int8_t, kInputBits> values_{};
};

InputVector encode_reading(const SensorReading& r);
SensorReading decode_vector(const InputVector& v);
/// Throws std::domain_error on a wrong length or a non-binary element.
SensorReading decode_vector(std::span<const int> bits);
BipolarVector to_bipolar(const InputVector& v);

/// Space separated digits, e.g. "0 0 1 1 1 0 0 ...".
std::string to_string(const InputVector& v);

}  // namespace coolctl

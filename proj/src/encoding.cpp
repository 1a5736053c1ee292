#include "coolctl/encoding.hpp"

#include <stdexcept>

namespace coolctl {
namespace {

void check_field(const char* name, int value) {
  if (value < 0 || value > kFieldMax) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(value) +
                            " is outside [0, " + std::to_string(kFieldMax) + "]");
  }
}

int decode_block(const std::array<std::uint8_t, kInputBits>& bits, std::size_t block) {
  int value = 0;
  for (int k = 0; k < kFieldBits; ++k) {
    value |= bits[block * kFieldBits + k] << k;
  }
  return value;
}

}  // namespace

void validate(const SensorReading& r) {
  check_field("temperature_c", r.temperature_c);
  check_field("duration_min", r.duration_min);
  check_field("humidity_pct", r.humidity_pct);
}

std::string to_string(const SensorReading& r) {
  return "(" + std::to_string(r.temperature_c) + ", " + std::to_string(r.duration_min) + ", " +
         std::to_string(r.humidity_pct) + ")";
}

InputVector::InputVector(std::span<const int> bits) {
  if (bits.size() != kInputBits) {
    throw std::domain_error("input vector must have " + std::to_string(kInputBits) +
                            " elements, got " + std::to_string(bits.size()));
  }
  for (std::size_t i = 0; i < kInputBits; ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw std::domain_error("input vector element " + std::to_string(i) + " is not binary");
    }
    bits_[i] = static_cast<std::uint8_t>(bits[i]);
  }
}

InputVector encode_reading(const SensorReading& r) {
  validate(r);
  InputVector v;
  const int fields[3] = {r.temperature_c, r.duration_min, r.humidity_pct};
  for (std::size_t block = 0; block < 3; ++block) {
    for (int k = 0; k < kFieldBits; ++k) {
      v.bits_[block * kFieldBits + k] = static_cast<std::uint8_t>((fields[block] >> k) & 1);
    }
  }
  return v;
}

SensorReading decode_vector(const InputVector& v) {
  return {decode_block(v.bits(), 0), decode_block(v.bits(), 1), decode_block(v.bits(), 2)};
}

SensorReading decode_vector(std::span<const int> bits) { return decode_vector(InputVector(bits)); }

BipolarVector to_bipolar(const InputVector& v) {
  BipolarVector b;
  for (std::size_t i = 0; i < kInputBits; ++i) {
    b.values_[i] = static_cast<std::int8_t>(2 * v[i] - 1);
  }
  return b;
}

std::string to_string(const InputVector& v) {
  std::string out;
  out.reserve(2 * kInputBits);
  for (std::size_t i = 0; i < kInputBits; ++i) {
    if (i) out += ' ';
    out += static_cast<char>('0' + v[i]);
  }
  return out;
}

}  // namespace coolctl

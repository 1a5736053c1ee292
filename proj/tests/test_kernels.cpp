#include <doctest.h>

#include <vector>

#include "coolctl/kernels.hpp"
#include "generators.hpp"

using namespace coolctl::kernels;

namespace {

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (available(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

std::vector<std::int32_t> random_weights() {
  std::vector<std::int32_t> w(kRows * kLanes, 0);
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kLanes; ++j) w[i * kLanes + j] = gen::uniform(-(1 << 15), 1 << 15);
  }
  return w;
}

std::vector<std::uint8_t> random_bits(std::size_t n) {
  std::vector<std::uint8_t> b(n * kRows);
  for (auto& v : b) v = static_cast<std::uint8_t>(gen::uniform(0, 1));
  return b;
}

}  // namespace

TEST_CASE("dispatch") {
  CHECK(available(Isa::scalar));
  CHECK(kernels_for(Isa::scalar).isa == Isa::scalar);
  CHECK(available(active_kernels().isa));
  CHECK(parse_isa("avx2") == Isa::avx2);
  CHECK_FALSE(parse_isa("sse9").has_value());
  if (!available(Isa::avx2)) CHECK_THROWS_AS(kernels_for(Isa::avx2), std::invalid_argument);
  MESSAGE("active kernels: " << name(active_kernels().isa));
}

TEST_CASE("net_input: every ISA matches scalar") {
  const auto& ref = scalar_kernels();
  for (Isa isa : available_isas()) {
    const auto& k = kernels_for(isa);
    for (int n = 0; n < gen::kCases; ++n) {
      const auto w = random_weights();
      const auto bits = random_bits(1);
      std::int32_t expected[kLanes], actual[kLanes];
      ref.net_input(w.data(), bits.data(), expected);
      k.net_input(w.data(), bits.data(), actual);
      REQUIRE(std::equal(expected, expected + kLanes, actual));
    }
  }
}

TEST_CASE("net_input_batch: every ISA matches scalar, including empty and odd sizes") {
  const auto& ref = scalar_kernels();
  for (Isa isa : available_isas()) {
    const auto& k = kernels_for(isa);
    for (std::size_t n : {0u, 1u, 3u, 17u, 250u}) {
      const auto w = random_weights();
      const auto bits = random_bits(n);
      std::vector<std::int32_t> expected(n * kLanes + 1, -7), actual(n * kLanes + 1, -7);
      ref.net_input_batch(w.data(), bits.data(), n, expected.data());
      k.net_input_batch(w.data(), bits.data(), n, actual.data());
      REQUIRE(expected == actual);
      CHECK(actual.back() == -7);  // nothing written past the end
    }
  }
}

TEST_CASE("accumulate_outer: every ISA matches scalar") {
  const auto& ref = scalar_kernels();
  for (Isa isa : available_isas()) {
    const auto& k = kernels_for(isa);
    for (int n = 0; n < gen::kCases; ++n) {
      auto w1 = random_weights();
      auto w2 = w1;
      std::int8_t x[kRows];
      for (auto& v : x) v = static_cast<std::int8_t>(gen::uniform(0, 1) ? 1 : -1);
      std::int32_t y[kLanes];
      for (auto& v : y) v = gen::uniform(-5, 5);
      ref.accumulate_outer(w1.data(), x, y);
      k.accumulate_outer(w2.data(), x, y);
      REQUIRE(w1 == w2);
    }
  }
}

TEST_CASE("zero padding lanes stay zero under one-hot accumulation") {
  for (Isa isa : available_isas()) {
    std::vector<std::int32_t> w(kRows * kLanes, 0);
    std::int8_t x[kRows];
    for (auto& v : x) v = 1;
    const std::int32_t y[kLanes] = {0, 0, 0, 1, 0, 0, 0, 0};
    kernels_for(isa).accumulate_outer(w.data(), x, y);
    for (std::size_t i = 0; i < kRows; ++i) {
      CHECK(w[i * kLanes + 6] == 0);
      CHECK(w[i * kLanes + 7] == 0);
      CHECK(w[i * kLanes + 3] == 1);
    }
  }
}

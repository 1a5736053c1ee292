// Built with -mavx2; nothing here may run before available(Isa::avx2) is true.
#include <immintrin.h>

#include "coolctl/kernels.hpp"

namespace coolctl::kernels {
namespace {

inline __m256i load_row(const std::int32_t* w, std::size_t i) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i * kLanes));
}

// A set bit becomes an all-ones lane mask, so and-ing selects the row.
inline __m256i masked_sum(const std::int32_t* w, const std::uint8_t* bits) {
  __m256i acc = _mm256_setzero_si256();
  for (std::size_t i = 0; i < kRows; ++i) {
    const __m256i mask = _mm256_set1_epi32(-static_cast<std::int32_t>(bits[i]));
    acc = _mm256_add_epi32(acc, _mm256_and_si256(load_row(w, i), mask));
  }
  return acc;
}

void net_input_avx2(const std::int32_t* w, const std::uint8_t* bits, std::int32_t* out) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(out), masked_sum(w, bits));
}

void net_input_batch_avx2(const std::int32_t* w, const std::uint8_t* bits, std::size_t n,
                          std::int32_t* out) {
  // Keep the whole 21-row matrix resident in registers across the batch.
  __m256i rows[kRows];
  for (std::size_t i = 0; i < kRows; ++i) rows[i] = load_row(w, i);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint8_t* b = bits + k * kRows;
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t i = 0; i < kRows; ++i) {
      const __m256i mask = _mm256_set1_epi32(-static_cast<std::int32_t>(b[i]));
      acc = _mm256_add_epi32(acc, _mm256_and_si256(rows[i], mask));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + k * kLanes), acc);
  }
}

void accumulate_outer_avx2(std::int32_t* w, const std::int8_t* x, const std::int32_t* y) {
  const __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y));
  for (std::size_t i = 0; i < kRows; ++i) {
    const __m256i vx = _mm256_set1_epi32(x[i]);
    __m256i* row = reinterpret_cast<__m256i*>(w + i * kLanes);
    _mm256_storeu_si256(row, _mm256_add_epi32(_mm256_loadu_si256(row), _mm256_mullo_epi32(vx, vy)));
  }
}

constexpr KernelTable kAvx2{Isa::avx2, net_input_avx2, net_input_batch_avx2,
                            accumulate_outer_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() { return kAvx2; }
}  // namespace detail

}  // namespace coolctl::kernels

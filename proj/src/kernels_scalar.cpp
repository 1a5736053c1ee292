#include "coolctl/kernels.hpp"

namespace coolctl::kernels {
namespace {

void net_input_scalar(const std::int32_t* w, const std::uint8_t* bits, std::int32_t* out) {
  for (std::size_t j = 0; j < kLanes; ++j) out[j] = 0;
  for (std::size_t i = 0; i < kRows; ++i) {
    if (!bits[i]) continue;
    const std::int32_t* row = w + i * kLanes;
    for (std::size_t j = 0; j < kLanes; ++j) out[j] += row[j];
  }
}

void net_input_batch_scalar(const std::int32_t* w, const std::uint8_t* bits, std::size_t n,
                            std::int32_t* out) {
  for (std::size_t k = 0; k < n; ++k) {
    net_input_scalar(w, bits + k * kRows, out + k * kLanes);
  }
}

void accumulate_outer_scalar(std::int32_t* w, const std::int8_t* x, const std::int32_t* y) {
  for (std::size_t i = 0; i < kRows; ++i) {
    for (std::size_t j = 0; j < kLanes; ++j) {
      w[i * kLanes + j] += static_cast<std::int32_t>(x[i]) * y[j];
    }
  }
}

constexpr KernelTable kScalar{Isa::scalar, net_input_scalar, net_input_batch_scalar,
                              accumulate_outer_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace coolctl::kernels

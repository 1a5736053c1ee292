#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

// Integer kernels behind the associative memory. Weights are stored row-major
// with each 6-class row padded to 8 lanes so a row is one 256-bit register;
// padding lanes are always zero.
namespace coolctl::kernels {

inline constexpr std::size_t kRows = 21;
inline constexpr std::size_t kLanes = 8;

enum class Isa { scalar, avx2 };

std::string_view name(Isa isa);
std::optional<Isa> parse_isa(std::string_view s);

struct KernelTable {
  Isa isa;
  // out[0..8) = sum of the rows of w whose bit is set.
  void (*net_input)(const std::int32_t* w, const std::uint8_t* bits, std::int32_t* out);
  // n independent net inputs; bits is n x 21, out is n x 8.
  void (*net_input_batch)(const std::int32_t* w, const std::uint8_t* bits, std::size_t n,
                          std::int32_t* out);
  // w[i][j] += x[i] * y[j] for all 21 x 8 entries.
  void (*accumulate_outer)(std::int32_t* w, const std::int8_t* x, const std::int32_t* y);
};

const KernelTable& scalar_kernels();

/// Compiled in and supported by the running CPU.
bool available(Isa isa);

/// Throws std::invalid_argument when `isa` is not available.
const KernelTable& kernels_for(Isa isa);

/// Best available table, chosen once per process. COOLCTL_ISA=scalar|avx2 in
/// the environment overrides the choice if the requested ISA is available.
const KernelTable& active_kernels();

namespace detail {
#if defined(COOLCTL_HAVE_AVX2_KERNELS)
const KernelTable& avx2_table();
#endif
}  // namespace detail

}  // namespace coolctl::kernels

#include "coolctl/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace coolctl::kernels {

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view s) {
  if (s == "scalar") return Isa::scalar;
  if (s == "avx2") return Isa::avx2;
  return std::nullopt;
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(COOLCTL_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument("kernel set '" + std::string(name(isa)) + "' is not available");
  }
#if defined(COOLCTL_HAVE_AVX2_KERNELS)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return scalar_kernels();
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("COOLCTL_ISA")) {
    if (auto requested = parse_isa(env); requested && available(*requested)) {
      return kernels_for(*requested);
    }
  }
  if (available(Isa::avx2)) return kernels_for(Isa::avx2);
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace coolctl::kernels

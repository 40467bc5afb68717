#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "heic/kernels.hpp"

namespace heic::simd {
namespace {

const KernelTable& table_for(Isa isa) {
#if defined(HEIC_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return avx2_kernels();
#endif
  (void)isa;
  return scalar_kernels();
}

Isa detect() {
  if (const char* env = std::getenv("HEIC_SIMD")) {
    const std::string wanted(env);
    if (wanted == "scalar") return Isa::Scalar;
    if (wanted == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> active{&table_for(detect())};
  return active;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(HEIC_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

Isa active_isa() { return kernels().isa; }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("SIMD target not supported here: " + std::string(isa_name(isa)));
  }
  active_table().store(&table_for(isa), std::memory_order_release);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace heic::simd

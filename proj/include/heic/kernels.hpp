#pragma once

// Data-parallel inner loops used by the graph model and the estimators.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant. The active table is chosen once at first use from the CPU
// features, and can be pinned with HEIC_SIMD=scalar|avx2 or force_isa().
//
// Elementwise kernels (axpy, scale, threshold_le, affine, bernoulli_mask)
// perform the same IEEE operations per element on every path, so their
// outputs are bit-identical across ISAs. Reductions (dot, sum,
// squared_distance) accumulate in a different order and agree only to
// rounding.

#include <cstddef>
#include <string_view>

namespace heic::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // y[i] = y[i] + alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // a[i] = a[i] * c
  void (*scale)(double* a, double c, std::size_t n);
  // out[i] = t[i] <= tau ? value : 0
  void (*threshold_le)(const double* t, double tau, double value, double* out, std::size_t n);
  // out[i] = scale * (a + b * t[i])
  void (*affine)(const double* t, double a, double b, double scale, double* out, std::size_t n);
  // out[i] = u[i] < p[i] ? 1 : 0
  void (*bernoulli_mask)(const double* u, const double* p, double* out, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(HEIC_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif

/// The table every library routine calls through.
const KernelTable& kernels();

bool isa_supported(Isa isa);
Isa active_isa();
/// Pins the dispatch target. Throws std::invalid_argument if the CPU (or the
/// build) does not support it.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

}  // namespace heic::simd

#include "heic/kernels.hpp"

namespace heic::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void scale(double* a, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] = a[i] * c;
}

void threshold_le(const double* t, double tau, double value, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = t[i] <= tau ? value : 0.0;
}

void affine(const double* t, double a, double b, double s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * (a + b * t[i]);
}

void bernoulli_mask(const double* u, const double* p, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] < p[i] ? 1.0 : 0.0;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, dot,  sum,    squared_distance, axpy,
                                 scale,       threshold_le, affine, bernoulli_mask};
  return table;
}

}  // namespace heic::simd

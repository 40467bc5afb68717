#include <immintrin.h>

#include "heic/kernels.hpp"

namespace heic::simd {
namespace {

constexpr std::size_t kLanes = 4;

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + kLanes),
                                             _mm256_loadu_pd(b + i + kLanes)));
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + kLanes));
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(a + i + kLanes), _mm256_loadu_pd(b + i + kLanes));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(d0, d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(d1, d1));
  }
  double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double diff = a[i] - b[i];
    acc += diff * diff;
  }
  return acc;
}

// No FMA below: the scalar path rounds the product before the add.
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void scale(double* a, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vc));
  }
  for (; i < n; ++i) a[i] = a[i] * c;
}

void threshold_le(const double* t, double tau, double value, double* out, std::size_t n) {
  const __m256d vtau = _mm256_set1_pd(tau);
  const __m256d vval = _mm256_set1_pd(value);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(t + i), vtau, _CMP_LE_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(mask, vval));
  }
  for (; i < n; ++i) out[i] = t[i] <= tau ? value : 0.0;
}

void affine(const double* t, double a, double b, double s, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d inner = _mm256_add_pd(va, _mm256_mul_pd(vb, _mm256_loadu_pd(t + i)));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, inner));
  }
  for (; i < n; ++i) out[i] = s * (a + b * t[i]);
}

void bernoulli_mask(const double* u, const double* p, double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(p + i), _CMP_LT_OQ);
    _mm256_storeu_pd(out + i, _mm256_and_pd(mask, one));
  }
  for (; i < n; ++i) out[i] = u[i] < p[i] ? 1.0 : 0.0;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::Avx2, dot,  sum,    squared_distance, axpy,
                                 scale,     threshold_le, affine, bernoulli_mask};
  return table;
}

}  // namespace heic::simd

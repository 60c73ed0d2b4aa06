#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "step_avx2.hpp"

namespace leafclust::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// Fixed lane order keeps the result reproducible run to run.
inline double reduce_add(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

inline double reduce_max(__m256d v) {
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

double l1_avx2(const double* len, const double* a, const double* b, std::size_t n) {
  const std::size_t rounds = n / kLanes;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < rounds * kLanes; i += kLanes) {
    const __m256d diff = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc = _mm256_fmadd_pd(diff, _mm256_loadu_pd(len + i), acc);
  }
  double sum = reduce_add(acc);
  for (std::size_t i = rounds * kLanes; i < n; ++i) sum += std::abs(a[i] - b[i]) * len[i];
  return sum;
}

double max_abs_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t rounds = n / kLanes;
  __m256d best = _mm256_setzero_pd();
  for (std::size_t i = 0; i < rounds * kLanes; i += kLanes) {
    const __m256d diff = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    best = _mm256_max_pd(best, diff);
  }
  double result = reduce_max(best);
  for (std::size_t i = rounds * kLanes; i < n; ++i) result = std::max(result, std::abs(a[i] - b[i]));
  return result;
}

double hellinger_sq_avx2(const double* len, const double* a, const double* b, std::size_t n) {
  const std::size_t rounds = n / kLanes;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < rounds * kLanes; i += kLanes) {
    const __m256d diff = _mm256_sub_pd(_mm256_sqrt_pd(_mm256_loadu_pd(a + i)),
                                       _mm256_sqrt_pd(_mm256_loadu_pd(b + i)));
    acc = _mm256_fmadd_pd(_mm256_mul_pd(diff, diff), _mm256_loadu_pd(len + i), acc);
  }
  double sum = reduce_add(acc);
  for (std::size_t i = rounds * kLanes; i < n; ++i) {
    const double diff = std::sqrt(a[i]) - std::sqrt(b[i]);
    sum += diff * diff * len[i];
  }
  return sum;
}

}  // namespace

const StepKernels& avx2_kernels() {
  static const StepKernels kernels{"avx2", &l1_avx2, &max_abs_avx2, &hellinger_sq_avx2};
  return kernels;
}

}  // namespace leafclust::kernels::detail

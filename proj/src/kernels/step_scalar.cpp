#include <algorithm>
#include <cmath>

#include "leafclust/step_kernels.hpp"

namespace leafclust::kernels {
namespace {

double l1_scalar(const double* len, const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]) * len[i];
  return sum;
}

double max_abs_scalar(const double* a, const double* b, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

double hellinger_sq_scalar(const double* len, const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = std::sqrt(a[i]) - std::sqrt(b[i]);
    sum += diff * diff * len[i];
  }
  return sum;
}

}  // namespace

const StepKernels& scalar() {
  static const StepKernels kernels{"scalar", &l1_scalar, &max_abs_scalar, &hellinger_sq_scalar};
  return kernels;
}

}  // namespace leafclust::kernels

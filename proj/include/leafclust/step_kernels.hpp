#pragma once

// Reduction kernels over two step functions sharing a common refinement.
// Every kernel takes interval lengths and the two height arrays, all of the
// same size. A scalar reference is always available; SIMD variants are
// compiled per target and chosen at runtime.

#include <cstddef>
#include <string_view>

namespace leafclust::kernels {

struct StepKernels {
  std::string_view name;
  /// sum_k |a_k - b_k| * len_k
  double (*l1)(const double* len, const double* a, const double* b, std::size_t n);
  /// max_k |a_k - b_k|
  double (*max_abs)(const double* a, const double* b, std::size_t n);
  /// sum_k (sqrt(a_k) - sqrt(b_k))^2 * len_k
  double (*hellinger_sq)(const double* len, const double* a, const double* b, std::size_t n);
};

const StepKernels& scalar();

/// AVX2+FMA variant, or nullptr when not compiled in or not supported by the CPU.
const StepKernels* avx2();

/// Kernel set used by the distance module. Picks the widest supported variant
/// unless LEAFCLUST_SIMD=scalar is set in the environment.
const StepKernels& active();

}  // namespace leafclust::kernels

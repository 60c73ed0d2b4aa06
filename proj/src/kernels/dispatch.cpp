#include <cstdlib>
#include <string_view>

#include "leafclust/step_kernels.hpp"

#ifdef LEAFCLUST_HAVE_AVX2
#include "step_avx2.hpp"
#endif

namespace leafclust::kernels {

const StepKernels* avx2() {
#ifdef LEAFCLUST_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const StepKernels& active() {
  static const StepKernels& chosen = [] () -> const StepKernels& {
    const char* forced = std::getenv("LEAFCLUST_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const StepKernels* wide = avx2()) return *wide;
    return scalar();
  }();
  return chosen;
}

}  // namespace leafclust::kernels

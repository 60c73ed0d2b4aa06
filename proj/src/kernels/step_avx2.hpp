#pragma once

#include "leafclust/step_kernels.hpp"

namespace leafclust::kernels::detail {

// Defined in a translation unit built with -mavx2 -mfma. Only call after a
// runtime CPU check.
const StepKernels& avx2_kernels();

}  // namespace leafclust::kernels::detail

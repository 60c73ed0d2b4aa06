#pragma once

namespace leafclust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitCompute = 2;

/// Entry point of the `leafclust` tool; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace leafclust::cli

#pragma once

#include <cstdint>

#include "leafclust/dataset.hpp"

namespace leafclust {

/// Synthetic CCD traces drawn from per-group smooth radius profiles.
struct SynthConfig {
  int groups = 4;
  int per_group = 5;
  std::size_t min_length = 500;
  std::size_t max_length = 4000;
  double noise = 0.02;          // sd of the multiplicative factor (1 + noise * N(0,1))
  bool random_rotation = true;  // uniform angular offset per trace
  bool random_scale = true;     // scale drawn log-uniformly from [0.5, 50]
  std::uint64_t seed = 1;

  void validate() const;
};

/// Ids are "G<g>.<k>", groups "G<g>". Byte-identical output for equal configs.
Dataset synthesize(const SynthConfig& config);

}  // namespace leafclust

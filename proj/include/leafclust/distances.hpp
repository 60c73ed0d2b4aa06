#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "leafclust/ccd.hpp"

namespace leafclust {

enum class DistanceTag { kL1, kSup, kHellingerSq, kMomentEuclidean };

struct DistanceKind {
  DistanceTag tag = DistanceTag::kL1;
  int moment_order = 5;  // used by kMomentEuclidean only

  /// Throws InputError when the moment order is below 1.
  void validate() const;
  /// "l1", "sup", "hellinger" or "moments".
  std::string_view name() const;
  friend bool operator==(const DistanceKind&, const DistanceKind&) = default;
};

/// Parses "l1", "sup", "hellinger", "moments".
DistanceKind parse_distance_kind(std::string_view name, int moment_order = 5);

/// Common refinement of two step functions on (0, 2*pi]. Interval i is
/// (ends[i] - lengths[i], ends[i]] with heights f_heights[i], g_heights[i].
struct Refinement {
  std::vector<double> ends;
  std::vector<double> lengths;
  std::vector<double> f_heights;
  std::vector<double> g_heights;

  std::size_t size() const { return ends.size(); }
};

Refinement merge_breakpoints(const StepDensity& f, const StepDensity& g);

/// D1: integral of |f - g|, in [0, 2].
double dist_l1(const StepDensity& f, const StepDensity& g);
/// D2: sup |f - g|.
double dist_sup(const StepDensity& f, const StepDensity& g);
/// D3: integral of (sqrt f - sqrt g)^2, in [0, 2]. No 1/2 factor, no root.
double dist_hellinger_sq(const StepDensity& f, const StepDensity& g);
/// D4: Euclidean distance between (alpha_1, beta_1, ..., alpha_r, beta_r) vectors.
double dist_moment_euclidean(const StepDensity& f, const StepDensity& g, int r);

double distance(const StepDensity& f, const StepDensity& g, const DistanceKind& kind);

/// Symmetric dissimilarity matrix with labels. Validated on construction.
class DistanceMatrix {
 public:
  /// Throws InputError unless m >= 2, labels are unique, entries are m*m
  /// (row-major), finite, nonnegative, exactly symmetric with a zero diagonal.
  DistanceMatrix(std::vector<std::string> labels, std::vector<double> entries, DistanceKind kind);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const DistanceKind& kind() const { return kind_; }
  double operator()(std::size_t i, std::size_t k) const { return entries_[i * labels_.size() + k]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> entries_;
  DistanceKind kind_;
};

/// All unordered pairs, each computed once. `threads` == 0 picks the hardware
/// concurrency; output does not depend on the thread count.
DistanceMatrix distance_matrix(const std::vector<StepDensity>& densities,
                               const std::vector<std::string>& labels, const DistanceKind& kind,
                               unsigned threads = 0);

}  // namespace leafclust

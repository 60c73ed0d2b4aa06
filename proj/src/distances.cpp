#include "leafclust/distances.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <utility>

#include "leafclust/error.hpp"
#include "leafclust/step_kernels.hpp"

namespace leafclust {

void DistanceKind::validate() const {
  if (tag == DistanceTag::kMomentEuclidean && moment_order < 1) {
    throw InputError("moment order r must be >= 1, got " + std::to_string(moment_order));
  }
}

std::string_view DistanceKind::name() const {
  switch (tag) {
    case DistanceTag::kL1: return "l1";
    case DistanceTag::kSup: return "sup";
    case DistanceTag::kHellingerSq: return "hellinger";
    case DistanceTag::kMomentEuclidean: return "moments";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view name, int moment_order) {
  DistanceKind kind;
  kind.moment_order = moment_order;
  if (name == "l1") {
    kind.tag = DistanceTag::kL1;
  } else if (name == "sup") {
    kind.tag = DistanceTag::kSup;
  } else if (name == "hellinger") {
    kind.tag = DistanceTag::kHellingerSq;
  } else if (name == "moments") {
    kind.tag = DistanceTag::kMomentEuclidean;
  } else {
    throw InputError("unknown distance '" + std::string(name) + "'");
  }
  kind.validate();
  return kind;
}

Refinement merge_breakpoints(const StepDensity& f, const StepDensity& g) {
  const auto& fb = f.breakpoints();
  const auto& gb = g.breakpoints();
  const std::size_t fk = f.intervals();
  const std::size_t gk = g.intervals();

  Refinement out;
  const std::size_t capacity = fk + gk;
  out.ends.reserve(capacity);
  out.lengths.reserve(capacity);
  out.f_heights.reserve(capacity);
  out.g_heights.reserve(capacity);

  std::size_t i = 0;
  std::size_t j = 0;
  double prev = 0.0;
  // Both sequences end at exactly 2*pi, so the pointers run out together.
  while (i < fk && j < gk) {
    const double next = std::min(fb[i + 1], gb[j + 1]);
    out.ends.push_back(next);
    out.lengths.push_back(next - prev);
    out.f_heights.push_back(f.heights()[i]);
    out.g_heights.push_back(g.heights()[j]);
    if (fb[i + 1] == next) ++i;
    if (gb[j + 1] == next) ++j;
    prev = next;
  }
  return out;
}

double dist_l1(const StepDensity& f, const StepDensity& g) {
  const Refinement r = merge_breakpoints(f, g);
  return kernels::active().l1(r.lengths.data(), r.f_heights.data(), r.g_heights.data(), r.size());
}

double dist_sup(const StepDensity& f, const StepDensity& g) {
  const Refinement r = merge_breakpoints(f, g);
  return kernels::active().max_abs(r.f_heights.data(), r.g_heights.data(), r.size());
}

double dist_hellinger_sq(const StepDensity& f, const StepDensity& g) {
  const Refinement r = merge_breakpoints(f, g);
  return kernels::active().hellinger_sq(r.lengths.data(), r.f_heights.data(),
                                        r.g_heights.data(), r.size());
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace

double dist_moment_euclidean(const StepDensity& f, const StepDensity& g, int r) {
  return euclidean(trig_moments(f, r).flattened(), trig_moments(g, r).flattened());
}

double distance(const StepDensity& f, const StepDensity& g, const DistanceKind& kind) {
  switch (kind.tag) {
    case DistanceTag::kL1: return dist_l1(f, g);
    case DistanceTag::kSup: return dist_sup(f, g);
    case DistanceTag::kHellingerSq: return dist_hellinger_sq(f, g);
    case DistanceTag::kMomentEuclidean: return dist_moment_euclidean(f, g, kind.moment_order);
  }
  throw ComputeError("unhandled distance kind");
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<double> entries,
                               DistanceKind kind)
    : labels_(std::move(labels)), entries_(std::move(entries)), kind_(kind) {
  kind_.validate();
  const std::size_t m = labels_.size();
  if (m < 2) throw InputError("distance matrix needs at least 2 items");
  if (entries_.size() != m * m) throw InputError("distance matrix entries are not m x m");
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != m) {
    throw InputError("distance matrix labels are not unique");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if ((*this)(i, i) != 0.0) {
      throw InputError("distance matrix diagonal entry for '" + labels_[i] + "' is not zero");
    }
    for (std::size_t k = i + 1; k < m; ++k) {
      const double v = (*this)(i, k);
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("distance matrix entry (" + labels_[i] + ", " + labels_[k] +
                         ") is negative or not finite");
      }
      if (v != (*this)(k, i)) {
        throw InputError("distance matrix is not symmetric at (" + labels_[i] + ", " +
                         labels_[k] + ")");
      }
    }
  }
}

DistanceMatrix distance_matrix(const std::vector<StepDensity>& densities,
                               const std::vector<std::string>& labels, const DistanceKind& kind,
                               unsigned threads) {
  kind.validate();
  const std::size_t m = densities.size();
  if (labels.size() != m) throw InputError("distance matrix: label count does not match");
  if (m < 2) throw InputError("distance matrix needs at least 2 densities");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != m) {
    throw InputError("distance matrix: duplicate labels");
  }

  std::vector<std::vector<double>> moments;
  if (kind.tag == DistanceTag::kMomentEuclidean) {
    moments.reserve(m);
    for (const auto& d : densities) moments.push_back(trig_moments(d, kind.moment_order).flattened());
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) pairs.emplace_back(i, k);
  }

  std::vector<double> entries(m * m, 0.0);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t p = first; p < pairs.size(); p += stride) {
      const auto [i, k] = pairs[p];
      const double v = moments.empty() ? distance(densities[i], densities[k], kind)
                                       : euclidean(moments[i], moments[k]);
      entries[i * m + k] = v;
      entries[k * m + i] = v;
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, pairs.size()));
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
  }
  return DistanceMatrix(labels, std::move(entries), kind);
}

}  // namespace leafclust

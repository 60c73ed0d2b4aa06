#include "leafclust/ccd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "leafclust/error.hpp"

namespace leafclust {

namespace {

// 2*pi*(j/n); j/n first so equal fractions from different grids agree.
double grid_point(std::size_t j, std::size_t n) {
  if (j == n) return kTwoPi;
  return kTwoPi * (static_cast<double>(j) / static_cast<double>(n));
}

}  // namespace

CcdSequence::CcdSequence(std::string id, std::vector<double> values)
    : id_(std::move(id)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InputError("sequence '" + id_ + "': needs at least 2 values, got " +
                     std::to_string(values_.size()));
  }
  bool any_positive = false;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const double y = values_[j];
    if (!std::isfinite(y) || y < 0.0) {
      throw InputError("sequence '" + id_ + "': value " + std::to_string(j + 1) +
                       " is negative or not finite");
    }
    any_positive = any_positive || y > 0.0;
  }
  if (!any_positive) throw InputError("sequence '" + id_ + "': all values are zero");
}

double CcdSequence::grid_angle(std::size_t j) const {
  return grid_point(j, values_.size());
}

StepDensity::StepDensity(std::vector<double> breakpoints, std::vector<double> heights,
                         std::string source_id, double rotation, bool direction_defined)
    : breakpoints_(std::move(breakpoints)),
      heights_(std::move(heights)),
      source_id_(std::move(source_id)),
      rotation_(rotation),
      direction_defined_(direction_defined) {
  if (heights_.empty() || breakpoints_.size() != heights_.size() + 1) {
    throw InputError("density '" + source_id_ + "': need K >= 1 heights and K+1 breakpoints");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != kTwoPi) {
    throw InputError("density '" + source_id_ + "': support must be exactly (0, 2*pi]");
  }
  for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k] > breakpoints_[k - 1])) {
      throw InputError("density '" + source_id_ + "': breakpoints not strictly increasing");
    }
  }
  for (double h : heights_) {
    if (!std::isfinite(h) || h < 0.0) {
      throw InputError("density '" + source_id_ + "': negative or non-finite height");
    }
  }
  if (std::abs(mass() - 1.0) > 1e-9) {
    throw InputError("density '" + source_id_ + "': total mass " + std::to_string(mass()) +
                     " is not 1");
  }
}

double StepDensity::operator()(double t) const {
  t = std::fmod(t, kTwoPi);
  if (t <= 0.0) t += kTwoPi;
  // First breakpoint >= t closes the interval that contains t.
  auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
  if (it == breakpoints_.end()) --it;
  return heights_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double StepDensity::mass() const {
  double sum = 0.0;
  for (std::size_t k = 0; k < heights_.size(); ++k) {
    sum += heights_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
  }
  return sum;
}

std::vector<double> TrigMoments::flattened() const {
  std::vector<double> out;
  out.reserve(2 * pairs.size());
  for (const auto& [alpha, beta] : pairs) {
    out.push_back(alpha);
    out.push_back(beta);
  }
  return out;
}

namespace {

// Neumaier compensated sum. First moments of near-isotropic leaves are small
// differences of large partial sums, and the mean direction inherits the
// plain-sum rounding divided by R.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double normalising_constant(const CcdSequence& seq) {
  const auto& y = seq.values();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  return 1.0 / (kTwoPi * mean);
}

}  // namespace

StepDensity density_from_ccd(const CcdSequence& seq) {
  const auto& y = seq.values();
  const std::size_t n = y.size();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  const double scale = kTwoPi * mean;

  std::vector<double> breakpoints(n + 1);
  std::vector<double> heights(n);
  breakpoints[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) breakpoints[j] = seq.grid_angle(j);
  for (std::size_t j = 0; j < n; ++j) heights[j] = y[j] / scale;
  return StepDensity(std::move(breakpoints), std::move(heights), seq.id());
}

namespace {

bool on_uniform_grid(const std::vector<double>& t) {
  const std::size_t n = t.size() - 1;
  for (std::size_t j = 1; j < n; ++j) {
    if (t[j] != grid_point(j, n)) return false;
  }
  return true;
}

// Moments of a density on the grid 2*pi*j/n, using the exact grid rather than
// its rounded breakpoints. Half-ulp breakpoint errors shift each interval's
// mass, and the mean direction of a near-isotropic leaf amplifies that by 1/R.
MomentPair uniform_grid_moment(const std::vector<double>& h, int p) {
  const std::size_t n = h.size();
  const std::size_t period = 2 * n;
  const auto step = static_cast<std::size_t>(p) % period;
  // Interval j has midpoint 2*pi*(2j+1)/(2n); reduce p*(2j+1) mod 2n exactly.
  std::size_t numerator = step;
  CompensatedSum alpha;
  CompensatedSum beta;
  for (std::size_t j = 0; j < n; ++j) {
    const double mid = kTwoPi * (static_cast<double>(numerator) / static_cast<double>(period));
    alpha.add(h[j] * std::cos(mid));
    beta.add(h[j] * std::sin(mid));
    numerator = (numerator + 2 * step) % period;
  }
  const double pd = static_cast<double>(p);
  const double half = 2.0 * std::sin(kTwoPi * (static_cast<double>(step) / static_cast<double>(period)));
  return {half * alpha.value() / pd, half * beta.value() / pd};
}

}  // namespace

TrigMoments trig_moments(const StepDensity& d, int r) {
  if (r < 1) throw InputError("trigonometric moment order must be >= 1");
  const auto& t = d.breakpoints();
  const auto& h = d.heights();
  const bool uniform = on_uniform_grid(t);

  TrigMoments out;
  out.pairs.reserve(static_cast<std::size_t>(r));
  for (int p = 1; p <= r; ++p) {
    if (uniform) {
      out.pairs.push_back(uniform_grid_moment(h, p));
      continue;
    }
    const double pd = static_cast<double>(p);
    CompensatedSum alpha;
    CompensatedSum beta;
    for (std::size_t k = 0; k < h.size(); ++k) {
      // sin(b) - sin(a) = 2 cos((a+b)/2) sin((b-a)/2), and likewise for cos;
      // the product form avoids cancellation on short intervals.
      const double mid = pd * (0.5 * (t[k] + t[k + 1]));
      const double half = 2.0 * std::sin(pd * (0.5 * (t[k + 1] - t[k])));
      alpha.add(h[k] * std::cos(mid) * half);
      beta.add(h[k] * std::sin(mid) * half);
    }
    out.pairs.push_back({alpha.value() / pd, beta.value() / pd});
  }
  return out;
}

MeanDirection mean_direction(const StepDensity& d) {
  const MomentPair first = trig_moments(d, 1).pairs.front();
  const double resultant = std::hypot(first.alpha, first.beta);
  if (resultant <= kIsotropicResultant) return {0.0, resultant, false};
  double angle = std::atan2(first.beta, first.alpha);
  if (angle <= 0.0) angle += kTwoPi;
  return {angle, resultant, true};
}

StepDensity rotate_density(const StepDensity& d, double mu) {
  double shift = std::fmod(mu, kTwoPi);
  if (shift < 0.0) shift += kTwoPi;
  if (shift >= kTwoPi) shift = 0.0;

  const auto& t = d.breakpoints();
  const auto& h = d.heights();
  if (shift == 0.0) {
    return StepDensity(t, h, d.source_id(), d.rotation() + mu, d.direction_defined());
  }

  // Interval k = (t[k], t[k+1]] with t[k] <= shift < t[k+1] straddles the new origin.
  const std::size_t straddle =
      static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), shift) - t.begin()) - 1;
  const std::size_t count = h.size();

  std::vector<double> ends;
  std::vector<double> heights;
  ends.reserve(count + 1);
  heights.reserve(count + 1);
  for (std::size_t k = straddle; k < count; ++k) {
    ends.push_back(t[k + 1] - shift);
    heights.push_back(h[k]);
  }
  const double wrap = kTwoPi - shift;
  for (std::size_t k = 0; k < straddle; ++k) {
    ends.push_back(t[k + 1] + wrap);
    heights.push_back(h[k]);
  }
  if (t[straddle] < shift) {
    ends.push_back(kTwoPi);
    heights.push_back(h[straddle]);
  }
  ends.back() = kTwoPi;

  // Rounding near the seam can push an end past 2*pi or collapse a piece to
  // zero length. Clamp, then drop empty pieces.
  std::vector<double> breakpoints{0.0};
  std::vector<double> kept;
  breakpoints.reserve(ends.size() + 1);
  kept.reserve(heights.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const double end = std::min(ends[i], kTwoPi);
    if (end <= breakpoints.back()) continue;
    breakpoints.push_back(end);
    kept.push_back(heights[i]);
  }
  return StepDensity(std::move(breakpoints), std::move(kept), d.source_id(), d.rotation() + mu,
                     d.direction_defined());
}

StepDensity normalize_leaf(const CcdSequence& seq) {
  StepDensity density = density_from_ccd(seq);
  const MeanDirection direction = mean_direction(density);
  if (!direction.defined) {
    return StepDensity(density.breakpoints(), density.heights(), seq.id(), 0.0, false);
  }
  return rotate_density(density, direction.angle);
}

LeafOutline leaf_outline(const CcdSequence& seq, bool rotated) {
  const double c = normalising_constant(seq);
  double mu = 0.0;
  if (rotated) {
    const MeanDirection direction = mean_direction(density_from_ccd(seq));
    if (direction.defined) mu = direction.angle;
  }
  LeafOutline outline{seq.id(), {}};
  outline.points.reserve(seq.size());
  const auto& y = seq.values();
  for (std::size_t j = 1; j <= seq.size(); ++j) {
    const double radius = c * y[j - 1];
    const double angle = seq.grid_angle(j) - mu;
    outline.points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }
  return outline;
}

}  // namespace leafclust

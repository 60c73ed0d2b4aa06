#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace leafclust {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raw centroid-contour-distance trace. Samples are taken to sit on the
/// uniform grid x_j = 2*pi*j/n, j = 1..n.
class CcdSequence {
 public:
  /// Throws InputError on fewer than two values, negative or non-finite
  /// values, or an all-zero trace.
  CcdSequence(std::string id, std::vector<double> values);

  const std::string& id() const { return id_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  /// Grid angle of sample j (1-based), 2*pi*j/n; sample n sits exactly at 2*pi.
  double grid_angle(std::size_t j) const;

 private:
  std::string id_;
  std::vector<double> values_;
};

/// Piecewise-constant probability density on (0, 2*pi].
///
/// Interval k is (breakpoints[k], breakpoints[k+1]] with height heights[k].
/// breakpoints.front() == 0 and breakpoints.back() == kTwoPi exactly.
class StepDensity {
 public:
  /// Validates ordering, nonnegativity and unit mass (1e-9).
  StepDensity(std::vector<double> breakpoints, std::vector<double> heights,
              std::string source_id = {}, double rotation = 0.0,
              bool direction_defined = true);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& heights() const { return heights_; }
  std::size_t intervals() const { return heights_.size(); }
  const std::string& source_id() const { return source_id_; }
  /// Rotation mu that has been subtracted from the angles (0 if none).
  double rotation() const { return rotation_; }
  /// False when normalization met an isotropic density (R == 0) and skipped rotation.
  bool direction_defined() const { return direction_defined_; }

  /// Density value at angle t; t is wrapped into (0, 2*pi].
  double operator()(double t) const;
  /// Sum of height * interval length.
  double mass() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> heights_;
  std::string source_id_;
  double rotation_;
  bool direction_defined_;
};

struct MomentPair {
  double alpha;  // E[cos(pT)]
  double beta;   // E[sin(pT)]
};

/// First r trigonometric moments, pairs[p-1] holds order p.
struct TrigMoments {
  std::vector<MomentPair> pairs;

  std::size_t order() const { return pairs.size(); }
  /// (alpha_1, beta_1, ..., alpha_r, beta_r).
  std::vector<double> flattened() const;
};

struct MeanDirection {
  double angle;     // in (0, 2*pi]; 0 when undefined
  double resultant; // R = sqrt(alpha_1^2 + beta_1^2)
  bool defined;
};

/// Resultant lengths at or below this are treated as isotropic. Rounding in
/// the closed-form moments of an exactly uniform density is O(1e-16).
inline constexpr double kIsotropicResultant = 1e-12;

struct Point2 {
  double u;
  double v;
};

struct LeafOutline {
  std::string id;
  std::vector<Point2> points;
};

/// Scale-normalized step density f(t) = y_j / (2*pi*mean(y)) on (x_{j-1}, x_j].
StepDensity density_from_ccd(const CcdSequence& seq);

/// Exact closed-form moments: alpha(p) = sum h_k [sin(p t_k) - sin(p t_{k-1})] / p,
/// beta(p) = sum h_k [cos(p t_{k-1}) - cos(p t_k)] / p. Throws on r == 0.
TrigMoments trig_moments(const StepDensity& d, int r);

/// Preferred angle of the first moment vector, quadrant-aware, mapped into (0, 2*pi].
MeanDirection mean_direction(const StepDensity& d);

/// Density of T - mu, with support re-expressed on (0, 2*pi]. The interval
/// straddling the wrap point is split in two.
StepDensity rotate_density(const StepDensity& d, double mu);

/// density_from_ccd, then rotation by the mean direction (skipped and flagged
/// when the direction is undefined).
StepDensity normalize_leaf(const CcdSequence& seq);

/// Polar-to-Cartesian outline (c*y_j cos x_j, c*y_j sin x_j); with `rotated`
/// the grid angles are shifted by -mu.
LeafOutline leaf_outline(const CcdSequence& seq, bool rotated);

}  // namespace leafclust

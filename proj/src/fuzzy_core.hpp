#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "errors.hpp"

namespace mtp {

namespace instrument {
/// Cheap thread-local counters read by complexity and timing tests.
/// `tri_evals` / `gauss_evals` count membership evaluations; `grid_ops`
/// counts per-point work in sampling, union and defuzzification.
extern thread_local std::uint64_t tri_evals;
extern thread_local std::uint64_t gauss_evals;
extern thread_local std::uint64_t grid_ops;

inline void reset() { tri_evals = gauss_evals = grid_ops = 0; }
}  // namespace instrument

/// Normal triangular set stored as peak position plus the two side widths.
/// Endpoints are `center - left_width` and `center + right_width`.
class TriangularSet {
 public:
  TriangularSet(double center, double left_width, double right_width);

  double center() const { return center_; }
  double left_width() const { return left_width_; }
  double right_width() const { return right_width_; }
  double left_endpoint() const { return center_ - left_width_; }
  double right_endpoint() const { return center_ + right_width_; }

 private:
  double center_;
  double left_width_;
  double right_width_;
};

/// Gaussian set exp(-(u - center)^2 / width); `width` is the squared-scale
/// denominator, so the standard deviation is sqrt(width / 2).
class GaussianSet {
 public:
  GaussianSet(double center, double width);

  double center() const { return center_; }
  double width() const { return width_; }

 private:
  double center_;
  double width_;
};

/// Lazily evaluated transform of a triangular set: a shift along the
/// universe axis, a power exponent, and an optional complement. The power
/// of a triangle is a power curve, not another triangle, so the transform
/// is never re-fitted; membership is evaluated on demand.
class MtpSet {
 public:
  explicit MtpSet(TriangularSet base, double shift = 0.0,
                  double exponent = 1.0, bool negated = false);

  double membership(double u) const;

  const TriangularSet& base() const { return base_; }
  double shift() const { return shift_; }
  double exponent() const { return exponent_; }
  bool negated() const { return negated_; }

  /// Closed support of the shifted carrier triangle. For a negated set the
  /// membership is positive outside this interval as well.
  double support_lo() const { return base_.left_endpoint() + shift_; }
  double support_hi() const { return base_.right_endpoint() + shift_; }

 private:
  TriangularSet base_;
  double shift_;
  double exponent_;
  bool negated_;
};

/// Membership values on a uniform grid, each in [0, 1].
class SampledSet {
 public:
  SampledSet(double grid_start, double grid_step, std::vector<double> values);

  double grid_start() const { return grid_start_; }
  double grid_step() const { return grid_step_; }
  std::size_t size() const { return values_.size(); }
  double point(std::size_t i) const { return grid_start_ + double(i) * grid_step_; }
  const std::vector<double>& values() const { return values_; }

 private:
  double grid_start_;
  double grid_step_;
  std::vector<double> values_;
};

/// Uniform sampling grid. The default grid places 1001 points over the
/// supplied support padded by one grid step on each side.
struct GridSpec {
  double lo;
  double hi;
  std::size_t points;

  double step() const { return (hi - lo) / double(points - 1); }
};

inline constexpr std::size_t kDefaultGridPoints = 1001;

GridSpec default_grid(double support_lo, double support_hi);

double tri_membership(const TriangularSet& set, double u);
double gauss_membership(const GaussianSet& set, double u);

/// Multiplies the exponent by m: m > 1 strengthens ("very"), 0 < m < 1
/// weakens ("more or less"). The support is unchanged.
MtpSet power_hedge(const MtpSet& set, double m);

/// Translates the set: out.membership(u) == in.membership(u - delta).
MtpSet shift_hedge(const MtpSet& set, double delta);

/// Pointwise 1 - membership. Only defined for unpowered sets.
MtpSet complement(const MtpSet& set);

SampledSet sample(const MtpSet& set, double lo, double hi, std::size_t n);
SampledSet sample(const MtpSet& set, const GridSpec& grid);

/// Pointwise maximum over sets sharing one grid.
SampledSet union_max(const std::vector<SampledSet>& sets);

/// Trapezoidal approximation of the centroid integral over the grid.
/// Throws NoMatchError when every value is zero.
double centroid_defuzzify(const SampledSet& set);

}  // namespace mtp

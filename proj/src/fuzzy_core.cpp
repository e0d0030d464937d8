#include "fuzzy_core.hpp"

#include <algorithm>
#include <cmath>

namespace mtp {

namespace instrument {
thread_local std::uint64_t tri_evals = 0;
thread_local std::uint64_t gauss_evals = 0;
thread_local std::uint64_t grid_ops = 0;
}  // namespace instrument

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

}  // namespace

TriangularSet::TriangularSet(double center, double left_width,
                             double right_width)
    : center_(center), left_width_(left_width), right_width_(right_width) {
  require_finite(center, "triangle center");
  if (!std::isfinite(left_width) || left_width <= 0.0)
    throw InputError("triangle left width must be positive");
  if (!std::isfinite(right_width) || right_width <= 0.0)
    throw InputError("triangle right width must be positive");
}

GaussianSet::GaussianSet(double center, double width)
    : center_(center), width_(width) {
  require_finite(center, "gaussian center");
  if (!std::isfinite(width) || width <= 0.0)
    throw InputError("gaussian width must be positive");
}

MtpSet::MtpSet(TriangularSet base, double shift, double exponent, bool negated)
    : base_(base), shift_(shift), exponent_(exponent), negated_(negated) {
  require_finite(shift, "shift");
  if (!std::isfinite(exponent) || exponent <= 0.0)
    throw InputError("exponent must be positive");
  if (negated && exponent != 1.0)
    throw UnsupportedError("complement is only defined for exponent 1");
}

double MtpSet::membership(double u) const {
  const double m = tri_membership(base_, u - shift_);
  if (negated_) return 1.0 - m;
  if (exponent_ == 1.0) return m;
  return std::pow(m, exponent_);
}

SampledSet::SampledSet(double grid_start, double grid_step,
                       std::vector<double> values)
    : grid_start_(grid_start), grid_step_(grid_step), values_(std::move(values)) {
  require_finite(grid_start, "grid start");
  if (!std::isfinite(grid_step) || grid_step <= 0.0)
    throw InputError("grid step must be positive");
  if (values_.size() < 2) throw InputError("sampled set needs at least 2 points");
  for (double& v : values_) {
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12))
      throw InputError("sampled membership value outside [0, 1]");
    v = std::clamp(v, 0.0, 1.0);
  }
}

GridSpec default_grid(double support_lo, double support_hi) {
  require_finite(support_lo, "support bound");
  require_finite(support_hi, "support bound");
  if (!(support_lo < support_hi))
    throw InputError("support must have positive length");
  // Pad by exactly one grid step on each side: with n-1 intervals covering
  // span + 2h we get h = span / (n - 3).
  const double span = support_hi - support_lo;
  const double h = span / double(kDefaultGridPoints - 3);
  return GridSpec{support_lo - h, support_hi + h, kDefaultGridPoints};
}

double tri_membership(const TriangularSet& set, double u) {
  require_finite(u, "membership argument");
  ++instrument::tri_evals;
  if (u == set.center()) return 1.0;
  double v;
  if (u < set.center()) {
    v = 1.0 + (u - set.center()) / set.left_width();
  } else {
    v = 1.0 + (set.center() - u) / set.right_width();
  }
  return std::clamp(v, 0.0, 1.0);
}

double gauss_membership(const GaussianSet& set, double u) {
  require_finite(u, "membership argument");
  ++instrument::gauss_evals;
  const double d = u - set.center();
  return std::exp(-(d * d) / set.width());
}

MtpSet power_hedge(const MtpSet& set, double m) {
  if (set.negated())
    throw UnsupportedError("power hedge of a complemented set is undefined");
  if (!std::isfinite(m) || m <= 0.0)
    throw InputError("hedge exponent must be positive");
  return MtpSet(set.base(), set.shift(), set.exponent() * m, false);
}

MtpSet shift_hedge(const MtpSet& set, double delta) {
  require_finite(delta, "shift delta");
  return MtpSet(set.base(), set.shift() + delta, set.exponent(), set.negated());
}

MtpSet complement(const MtpSet& set) {
  if (set.exponent() != 1.0)
    throw UnsupportedError("complement of a powered set is undefined");
  return MtpSet(set.base(), set.shift(), 1.0, !set.negated());
}

SampledSet sample(const MtpSet& set, double lo, double hi, std::size_t n) {
  require_finite(lo, "grid bound");
  require_finite(hi, "grid bound");
  if (!(lo < hi)) throw InputError("grid bounds must satisfy lo < hi");
  if (n < 2) throw InputError("grid needs at least 2 points");
  const double step = (hi - lo) / double(n - 1);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = set.membership(lo + double(i) * step);
  instrument::grid_ops += n;
  return SampledSet(lo, step, std::move(values));
}

SampledSet sample(const MtpSet& set, const GridSpec& grid) {
  return sample(set, grid.lo, grid.hi, grid.points);
}

SampledSet union_max(const std::vector<SampledSet>& sets) {
  if (sets.empty()) throw InputError("union of zero sets");
  const SampledSet& first = sets.front();
  std::vector<double> out = first.values();
  for (std::size_t k = 1; k < sets.size(); ++k) {
    const SampledSet& s = sets[k];
    if (s.size() != first.size() || s.grid_start() != first.grid_start() ||
        s.grid_step() != first.grid_step())
      throw InputError("union operands must share one grid");
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = std::max(out[i], s.values()[i]);
    instrument::grid_ops += s.size();
  }
  return SampledSet(first.grid_start(), first.grid_step(), std::move(out));
}

double centroid_defuzzify(const SampledSet& set) {
  // Trapezoid weights: half at the two grid ends. The common step factor
  // cancels in the ratio.
  double num = 0.0;
  double den = 0.0;
  const std::size_t n = set.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double mu = w * set.values()[i];
    num += mu * set.point(i);
    den += mu;
  }
  instrument::grid_ops += 2 * n;
  if (den <= 0.0)
    throw NoMatchError("cannot defuzzify an empty fuzzy set");
  return num / den;
}

}  // namespace mtp

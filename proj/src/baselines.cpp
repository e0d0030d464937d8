#include "baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtp {

std::pair<SampledSet, double> mamdani_classic_infer(
    const MamdaniSystem& system, std::span<const double> inputs) {
  if (inputs.size() != system.arity())
    throw InputError("input count does not match system arity");

  const std::size_t n = system.rules().size();
  std::vector<double> firing(n, 0.0);
  std::vector<std::size_t> active;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const MamdaniRule& rule = system.rules()[j];
    double w = 1.0;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      w = std::min(w, tri_membership(rule.antecedents[i], inputs[i]));
    firing[j] = w;
    if (w <= 0.0) continue;
    active.push_back(j);
    lo = std::min(lo, rule.consequent.left_endpoint());
    hi = std::max(hi, rule.consequent.right_endpoint());
  }
  if (active.empty()) throw NoMatchError("no rule fires for the input");

  const GridSpec grid = default_grid(lo, hi);
  const double step = grid.step();
  std::vector<SampledSet> clipped;
  clipped.reserve(active.size());
  for (std::size_t j : active) {
    const TriangularSet& q = system.rules()[j].consequent;
    std::vector<double> values(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
      const double z = grid.lo + double(i) * step;
      values[i] = std::min(tri_membership(q, z), firing[j]);
    }
    clipped.emplace_back(grid.lo, step, std::move(values));
  }
  SampledSet fused = union_max(clipped);
  const double crisp = centroid_defuzzify(fused);
  return {std::move(fused), crisp};
}

double sugeno_membership(const TriangularSet& a, double x) {
  if (!std::isfinite(x)) throw InputError("input must be finite");
  const double c = a.center();
  const double l = a.left_endpoint();
  const double r = a.right_endpoint();
  if (x >= c && x < r) return (r - x) / (r - c);
  if (x > l && x < c) return (x - l) / (c - l);
  return 0.0;
}

double sugeno_infer(const TSSystem& system, std::span<const double> inputs,
                    AndOp op) {
  if (inputs.size() != system.arity())
    throw InputError("input count does not match system arity");
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (const TSRule& rule : system.rules()) {
    double u = sugeno_membership(rule.antecedents[0], inputs[0]);
    for (std::size_t i = 1; i < inputs.size() && u > 0.0; ++i) {
      const double w = sugeno_membership(rule.antecedents[i], inputs[i]);
      u = op == AndOp::min ? std::min(u, w) : u * w;
    }
    if (u <= 0.0) continue;
    weight_sum += u;
    value_sum += u * rule.output(inputs);
  }
  if (weight_sum <= 0.0)
    throw NoMatchError("no rule matches the input");
  return value_sum / weight_sum;
}

double sugeno_infer(const TSSystem& system, std::span<const double> inputs) {
  return sugeno_infer(system, inputs, system.and_op());
}

double wang_distance_infer_at(std::span<const TSRule> rules,
                              std::span<const double> input_centers) {
  if (rules.size() < 2)
    throw InputError("distance-type reasoning needs at least two rules");
  const std::size_t s = rules.front().antecedents.size();
  if (input_centers.size() != s)
    throw InputError("input count does not match rule arity");

  const std::size_t m = rules.size();
  std::vector<double> dist(m, 0.0);
  std::size_t zero_count = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (rules[j].antecedents.size() != s)
      throw InputError("rules must share one arity");
    for (std::size_t i = 0; i < s; ++i)
      dist[j] += std::fabs(rules[j].antecedents[i].center() - input_centers[i]);
    if (dist[j] == 0.0) ++zero_count;
  }
  if (zero_count >= 2)
    throw DegenerateError("two or more rules at zero distance");

  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double w = 1.0;
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) w *= dist[k];
    num += w * rules[j].output(input_centers);
    den += w;
  }
  if (den <= 0.0) throw DegenerateError("distance weights sum to zero");
  return num / den;
}

double wang_distance_infer(std::span<const TSRule> rules,
                           std::span<const TriangularSet> input_sets) {
  std::vector<double> centers(input_sets.size());
  for (std::size_t i = 0; i < input_sets.size(); ++i)
    centers[i] = input_sets[i].center();
  return wang_distance_infer_at(rules, centers);
}

GammaSet::GammaSet(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InputError("ramp set needs lo < hi");
}

double GammaSet::membership(double x) const {
  if (!std::isfinite(x)) throw InputError("input must be finite");
  return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double overlap_measure(const GammaSet& a, const GammaSet& a_prime) {
  return ((a.lo() + a.hi()) - (a_prime.lo() + a_prime.hi())) /
         (a.length() + a_prime.length());
}

double psi_center(double w, double l_bp, const GammaSet& b,
                  const UniverseBounds& bounds) {
  if (!std::isfinite(w)) throw InputError("overlap measure must be finite");
  if (!std::isfinite(l_bp) || l_bp <= 0.0)
    throw InputError("result length must be positive");
  if (w <= -1.0) return b.hi();
  const double edge = bounds.min_u - 0.5 * l_bp;
  if (w == 1.0) return edge;
  const double c = b.lo();
  const double d = b.hi();
  return 0.5 * ((edge - c) * w * w + (edge - d) * w + (c + d));
}

std::optional<GammaSet> hellendoorn_gmp(const GammaSet& a, const GammaSet& b,
                                        const GammaSet& a_prime,
                                        const UniverseBounds& bounds) {
  const double l_bp = (a_prime.length() / a.length()) * b.length();
  const double w = overlap_measure(a, a_prime);
  if (w >= 1.0) return std::nullopt;  // observation much weaker: unknown
  const double center = psi_center(w, l_bp, b, bounds);
  return GammaSet(center - 0.5 * l_bp, center + 0.5 * l_bp);
}

}  // namespace mtp

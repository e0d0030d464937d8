#include "mamdani_mtp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtp {

MamdaniSystem::MamdaniSystem(std::vector<MamdaniRule> rules,
                             std::vector<int> signs, DeltaMap delta_map,
                             DefuzzMode defuzz_mode)
    : rules_(std::move(rules)),
      signs_(std::move(signs)),
      delta_map_(delta_map),
      defuzz_mode_(defuzz_mode) {
  if (rules_.empty()) throw InputError("rule base needs at least one rule");
  if (signs_.empty()) throw InputError("system needs at least one input");
  for (int s : signs_)
    if (s != 1 && s != -1) throw InputError("input signs must be +1 or -1");
  for (const MamdaniRule& r : rules_)
    if (r.antecedents.size() != signs_.size())
      throw InputError("rule arity does not match system arity");
}

double antecedent_movement(const TriangularSet& p, double x) {
  if (!std::isfinite(x)) throw InputError("input must be finite");
  const double d = x - p.center();
  return d <= 0.0 ? d / p.left_width() : d / p.right_width();
}

double aggregate_movement(const MamdaniRule& rule,
                          std::span<const double> inputs,
                          std::span<const int> signs) {
  if (inputs.size() != rule.antecedents.size() ||
      signs.size() != rule.antecedents.size())
    throw InputError("input/sign count does not match rule arity");
  double sum = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    sum += double(signs[i]) * antecedent_movement(rule.antecedents[i], inputs[i]);
  return sum / double(inputs.size());
}

MamdaniResult mamdani_mtp_infer(const MamdaniSystem& system,
                                std::span<const double> inputs) {
  if (inputs.size() != system.arity())
    throw InputError("input count does not match system arity");

  const std::size_t n = system.rules().size();
  std::vector<double> shift(n, 0.0);
  std::vector<double> abs_movement(n, 0.0);
  std::vector<std::size_t> active;
  active.reserve(n);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const MamdaniRule& rule = system.rules()[j];
    const double dx = aggregate_movement(rule, inputs, system.signs());
    abs_movement[j] = std::fabs(dx);
    if (abs_movement[j] > 1.0) continue;  // rule does not match the input
    shift[j] = system.delta_map().apply(dx);
    active.push_back(j);
    lo = std::min(lo, rule.consequent.left_endpoint() + shift[j]);
    hi = std::max(hi, rule.consequent.right_endpoint() + shift[j]);
  }
  if (active.empty())
    throw NoMatchError("no rule matches the input", std::move(abs_movement));

  const GridSpec grid = default_grid(lo, hi);
  std::vector<SampledSet> moved;
  moved.reserve(active.size());
  double center_sum = 0.0;
  for (std::size_t j : active) {
    moved.push_back(
        sample(MtpSet(system.rules()[j].consequent, shift[j]), grid));
    center_sum += system.rules()[j].consequent.center() + shift[j];
  }
  SampledSet fused = union_max(moved);

  double crisp;
  if (system.defuzz_mode() == DefuzzMode::center_average) {
    crisp = center_sum / double(active.size());
  } else {
    crisp = centroid_defuzzify(fused);
  }
  return MamdaniResult{std::move(fused), crisp, std::move(active)};
}

}  // namespace mtp

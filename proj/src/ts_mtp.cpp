#include "ts_mtp.hpp"

#include <algorithm>
#include <cmath>

namespace mtp {

double TSRule::output(std::span<const double> inputs) const {
  if (inputs.size() + 1 != coefficients.size())
    throw InputError("input count does not match rule coefficients");
  double y = coefficients[0];
  for (std::size_t i = 0; i < inputs.size(); ++i)
    y += coefficients[i + 1] * inputs[i];
  return y;
}

TSSystem::TSSystem(std::vector<TSRule> rules, double epsilon, AndOp and_op)
    : rules_(std::move(rules)), epsilon_(epsilon), and_op_(and_op) {
  if (rules_.empty()) throw InputError("rule base needs at least one rule");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw InputError("activation threshold must lie in [0, 1]");
  const std::size_t s = rules_.front().antecedents.size();
  if (s == 0) throw InputError("rules need at least one antecedent");
  for (const TSRule& r : rules_) {
    if (r.antecedents.size() != s)
      throw InputError("rules must share one arity");
    if (r.coefficients.size() != s + 1)
      throw InputError("rule needs arity + 1 coefficients");
  }
}

double crisp_movement(const TriangularSet& a, double x) {
  if (!std::isfinite(x)) throw InputError("input must be finite");
  const double c = a.center();
  const double l = a.left_endpoint();
  const double r = a.right_endpoint();
  if (x >= c && x < r) return (x - c) / (r - c);
  if (x > l && x < c) return (c - x) / (c - l);
  return 1.0;
}

double movement_degree(const TSRule& rule, std::span<const double> inputs,
                       AndOp op) {
  if (inputs.size() != rule.antecedents.size())
    throw InputError("input count does not match rule arity");
  double fold = crisp_movement(rule.antecedents[0], inputs[0]);
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    const double d = crisp_movement(rule.antecedents[i], inputs[i]);
    fold = op == AndOp::min ? std::min(fold, d) : fold * d;
  }
  return 1.0 - fold;
}

std::vector<std::pair<std::size_t, double>> active_rules(
    const TSSystem& system, std::span<const double> inputs) {
  std::vector<std::pair<std::size_t, double>> act;
  for (std::size_t j = 0; j < system.rules().size(); ++j) {
    const double d = movement_degree(system.rules()[j], inputs, system.and_op());
    if (d >= system.epsilon()) act.emplace_back(j, d);
  }
  return act;
}

double ts_mtp_infer(const TSSystem& system, std::span<const double> inputs) {
  if (inputs.size() != system.arity())
    throw InputError("input count does not match system arity");
  const auto act = active_rules(system, inputs);
  if (act.empty()) throw NoMatchError("no rule reaches the activation threshold");
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (const auto& [j, d] : act) {
    weight_sum += d;
    value_sum += d * system.rules()[j].output(inputs);
  }
  if (weight_sum <= 0.0)
    throw DegenerateError("active rule degrees sum to zero");
  return value_sum / weight_sum;
}

}  // namespace mtp

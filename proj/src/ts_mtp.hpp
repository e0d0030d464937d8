#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fuzzy_core.hpp"

namespace mtp {

/// Rule with triangular antecedents and a linear consequent
/// y_j = c_0 + c_1 x_1 + ... + c_s x_s (coefficient count = arity + 1).
struct TSRule {
  std::vector<TriangularSet> antecedents;
  std::vector<double> coefficients;

  double output(std::span<const double> inputs) const;
};

enum class AndOp { min, product };

class TSSystem {
 public:
  TSSystem(std::vector<TSRule> rules, double epsilon = 0.0,
           AndOp and_op = AndOp::min);

  const std::vector<TSRule>& rules() const { return rules_; }
  double epsilon() const { return epsilon_; }
  AndOp and_op() const { return and_op_; }
  std::size_t arity() const { return rules_.front().antecedents.size(); }

 private:
  std::vector<TSRule> rules_;
  double epsilon_;
  AndOp and_op_;
};

/// Normalized distance from the set's peak to a crisp input, saturating
/// at 1 on and beyond the support endpoints.
double crisp_movement(const TriangularSet& a, double x);

/// 1 minus the and-fold of the per-input movements; large when some input
/// sits near the rule's peaks.
double movement_degree(const TSRule& rule, std::span<const double> inputs,
                       AndOp op);

/// Indices (with degrees) of rules whose degree reaches the threshold.
std::vector<std::pair<std::size_t, double>> active_rules(
    const TSSystem& system, std::span<const double> inputs);

/// Movement-degree-weighted average of the active rules' linear outputs.
double ts_mtp_infer(const TSSystem& system, std::span<const double> inputs);

}  // namespace mtp

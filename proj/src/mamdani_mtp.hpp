#pragma once

#include <span>
#include <vector>

#include "mtp_inference.hpp"

namespace mtp {

struct MamdaniRule {
  std::vector<TriangularSet> antecedents;
  TriangularSet consequent;
};

enum class DefuzzMode { centroid, center_average };

/// Multi-input Mamdani rule base inferred by movement: per-rule normalized
/// movement, sign-weighted aggregation, consequent shifting, union.
class MamdaniSystem {
 public:
  MamdaniSystem(std::vector<MamdaniRule> rules, std::vector<int> signs,
                DeltaMap delta_map = DeltaMap::linear(1.0),
                DefuzzMode defuzz_mode = DefuzzMode::centroid);

  const std::vector<MamdaniRule>& rules() const { return rules_; }
  const std::vector<int>& signs() const { return signs_; }
  const DeltaMap& delta_map() const { return delta_map_; }
  DefuzzMode defuzz_mode() const { return defuzz_mode_; }
  std::size_t arity() const { return signs_.size(); }

 private:
  std::vector<MamdaniRule> rules_;
  std::vector<int> signs_;
  DeltaMap delta_map_;
  DefuzzMode defuzz_mode_;
};

struct MamdaniResult {
  SampledSet fuzzy;
  double crisp;
  std::vector<std::size_t> active;
};

/// Side-normalized signed movement of a crisp input from the set's peak:
/// positive to the right, divided by the width of the side the input
/// falls on, so inputs inside the support map into [-1, 1].
double antecedent_movement(const TriangularSet& p, double x);

/// Arithmetic mean of the sign-weighted per-input movements.
double aggregate_movement(const MamdaniRule& rule,
                          std::span<const double> inputs,
                          std::span<const int> signs);

/// Rules whose aggregated |movement| exceeds 1 are excluded. Throws
/// NoMatchError (carrying every |dx_j|) when no rule survives.
MamdaniResult mamdani_mtp_infer(const MamdaniSystem& system,
                                std::span<const double> inputs);

}  // namespace mtp

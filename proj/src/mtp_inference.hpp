#pragma once

#include <optional>

#include "fuzzy_core.hpp"

namespace mtp {

/// One "if x is A then y is B" rule over triangular sets.
struct SingleRule {
  TriangularSet antecedent;
  TriangularSet consequent;
};

/// An observation is either a crisp point or a structured description of
/// how the matching set was moved/transformed: a shift along the axis, a
/// power exponent, and an optional complement. Complemented observations
/// carry exponent 1.
class Observation {
 public:
  static Observation crisp(double x0);
  static Observation structured(double shift, double exponent, bool negated);

  bool is_crisp() const { return crisp_; }
  double x0() const { return x0_; }
  double shift() const { return shift_; }
  double exponent() const { return exponent_; }
  bool negated() const { return negated_; }

 private:
  Observation() = default;
  bool crisp_ = false;
  double x0_ = 0.0;
  double shift_ = 0.0;
  double exponent_ = 1.0;
  bool negated_ = false;
};

/// Mapping from antecedent movement to consequent movement. The linear
/// kind scales by k; the power kind raises |dx| to k preserving sign, with
/// the convention that k = 0 yields 1 for any nonzero movement.
class DeltaMap {
 public:
  enum class Kind { linear, power };

  static DeltaMap linear(double k, double max_delta = 0.0);
  static DeltaMap power(double k);

  Kind kind() const { return kind_; }
  double k() const { return k_; }

  double apply(double dx) const;

 private:
  DeltaMap(Kind kind, double k) : kind_(kind), k_(k) {}
  Kind kind_;
  double k_;
};

/// Proportional coefficient between the observation and result exponents:
/// the result exponent is m times the observation exponent.
struct IndexMap {
  double m = 1.0;
};

/// Signed distance from the antecedent peak to a crisp input.
double movement_amount(const TriangularSet& rule_antecedent, double x0);

double map_delta(const DeltaMap& map, double dx);

/// Forward inference: extract (shift, exponent) from the observation
/// against the antecedent and apply them, mapped, to the consequent.
/// Returns nothing when the realized observation and the antecedent have
/// disjoint supports.
std::optional<MtpSet> fmp_infer(const SingleRule& rule, const Observation& obs,
                                const DeltaMap& dmap, const IndexMap& imap);

/// Backward inference: the mirror of fmp_infer with the roles of the
/// antecedent and consequent exchanged. The observation lives on the
/// consequent universe.
std::optional<MtpSet> fmt_infer(const SingleRule& rule, const Observation& obs,
                                const DeltaMap& dmap, const IndexMap& imap);

}  // namespace mtp

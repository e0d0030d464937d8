#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mamdani_mtp.hpp"
#include "ts_mtp.hpp"

namespace mtp {

/// Classic min-inference over a Mamdani rule base: per-rule firing strength
/// is the min of the antecedent memberships, the consequent is clipped at
/// that strength, results are fused by max and defuzzified by centroid.
std::pair<SampledSet, double> mamdani_classic_infer(
    const MamdaniSystem& system, std::span<const double> inputs);

/// Triangular membership written from the endpoint form: the complement of
/// crisp_movement inside the support.
double sugeno_membership(const TriangularSet& a, double x);

/// Matching-degree weighted average over rules with positive firing
/// strength. Throws NoMatchError when no rule fires.
double sugeno_infer(const TSSystem& system, std::span<const double> inputs,
                    AndOp op);
double sugeno_infer(const TSSystem& system, std::span<const double> inputs);

/// Distance-type reasoning: per-rule distance is the summed absolute
/// center distance to the input sets, and each rule is weighted by the
/// product of every other rule's distance.
double wang_distance_infer(std::span<const TSRule> rules,
                           std::span<const TriangularSet> input_sets);

/// Same computation on input centers directly (crisp inputs).
double wang_distance_infer_at(std::span<const TSRule> rules,
                              std::span<const double> input_centers);

/// Monotone ramp set: membership 0 at lo rising linearly to 1 at hi.
class GammaSet {
 public:
  GammaSet(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double length() const { return hi_ - lo_; }
  double center() const { return 0.5 * (lo_ + hi_); }
  double membership(double x) const;

 private:
  double lo_;
  double hi_;
};

struct UniverseBounds {
  double min_u;
  double max_u;
};

/// Overlap measure of two ramp sets from their endpoint sums; 0 when the
/// centers coincide, negative when the second set sits to the right.
double overlap_measure(const GammaSet& a, const GammaSet& a_prime);

/// Center of the result shell: quadratic interpolation in the overlap
/// measure with pinned boundary cases at w = 1 and w <= -1.
double psi_center(double w, double l_bp, const GammaSet& b,
                  const UniverseBounds& bounds);

/// Functional generalized modus ponens over ramp sets. Returns nothing
/// ("unknown", membership 1 everywhere) when the observation is much
/// weaker than the antecedent (w >= 1).
std::optional<GammaSet> hellendoorn_gmp(const GammaSet& a, const GammaSet& b,
                                        const GammaSet& a_prime,
                                        const UniverseBounds& bounds);

}  // namespace mtp

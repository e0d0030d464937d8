#include "mtp_inference.hpp"

#include <cmath>

namespace mtp {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

bool is_integer(double v) { return v == std::floor(v); }

}  // namespace

Observation Observation::crisp(double x0) {
  require_finite(x0, "crisp observation");
  Observation o;
  o.crisp_ = true;
  o.x0_ = x0;
  return o;
}

Observation Observation::structured(double shift, double exponent,
                                    bool negated) {
  require_finite(shift, "observation shift");
  if (!std::isfinite(exponent) || exponent <= 0.0)
    throw InputError("observation exponent must be positive");
  if (negated && exponent != 1.0)
    throw InputError("complemented observations carry exponent 1");
  Observation o;
  o.shift_ = shift;
  o.exponent_ = exponent;
  o.negated_ = negated;
  return o;
}

DeltaMap DeltaMap::linear(double k, double max_delta) {
  if (!std::isfinite(k) || k < 0.0)
    throw InputError("linear movement coefficient must be nonnegative");
  if (max_delta > 0.0 && k > max_delta)
    throw InputError("linear movement coefficient exceeds configured maximum");
  return DeltaMap(Kind::linear, k);
}

DeltaMap DeltaMap::power(double k) {
  if (!std::isfinite(k) || k < 0.0)
    throw InputError("power movement coefficient must be nonnegative");
  return DeltaMap(Kind::power, k);
}

double DeltaMap::apply(double dx) const {
  require_finite(dx, "movement amount");
  if (dx == 0.0) return 0.0;
  if (kind_ == Kind::linear) return k_ * dx;
  if (k_ == 0.0) return 1.0;
  if (dx < 0.0 && !is_integer(k_))
    throw InputError(
        "power movement map is undefined for negative movement and a "
        "non-integer coefficient");
  const double mag = std::pow(std::fabs(dx), k_);
  return dx < 0.0 ? -mag : mag;
}

double movement_amount(const TriangularSet& rule_antecedent, double x0) {
  require_finite(x0, "crisp input");
  return x0 - rule_antecedent.center();
}

double map_delta(const DeltaMap& map, double dx) { return map.apply(dx); }

namespace {

struct Extracted {
  double shift;
  double exponent;
  bool negated;
};

Extracted extract(const TriangularSet& matched, const Observation& obs) {
  if (obs.is_crisp())
    return {movement_amount(matched, obs.x0()), 1.0, false};
  return {obs.shift(), obs.exponent(), obs.negated()};
}

std::optional<MtpSet> infer(const TriangularSet& matched,
                            const TriangularSet& emitted,
                            const Observation& obs, const DeltaMap& dmap,
                            const IndexMap& imap) {
  if (!std::isfinite(imap.m) || imap.m < 0.0)
    throw InputError("index coefficient must be nonnegative");
  const Extracted e = extract(matched, obs);
  if (e.negated) {
    // "not X" matches the rule unconditionally and negates the output;
    // exponent and movement do not apply to complements.
    return MtpSet(emitted, 0.0, 1.0, true);
  }
  // Disjoint closed supports: the realized observation is the matched
  // set's support translated by the extracted shift.
  const double span = matched.left_width() + matched.right_width();
  if (std::fabs(e.shift) > span) return std::nullopt;
  return MtpSet(emitted, dmap.apply(e.shift), imap.m * e.exponent, false);
}

}  // namespace

std::optional<MtpSet> fmp_infer(const SingleRule& rule, const Observation& obs,
                                const DeltaMap& dmap, const IndexMap& imap) {
  return infer(rule.antecedent, rule.consequent, obs, dmap, imap);
}

std::optional<MtpSet> fmt_infer(const SingleRule& rule, const Observation& obs,
                                const DeltaMap& dmap, const IndexMap& imap) {
  return infer(rule.consequent, rule.antecedent, obs, dmap, imap);
}

}  // namespace mtp

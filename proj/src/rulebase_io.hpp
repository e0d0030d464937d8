#pragma once

#include <optional>
#include <span>
#include <string>

#include "baselines.hpp"
#include "mtp_inference.hpp"

namespace mtp {

/// A rule base loaded from a JSON document. Two families exist: "mamdani"
/// documents carry set-valued consequents and per-input signs, "ts"
/// documents carry linear consequents. Triangles are written as
/// {"center": c, "left": lw, "right": rw} with side widths.
class RuleBase {
 public:
  enum class Family { mamdani, ts };

  static RuleBase parse(const std::string& json_text);

  Family family() const { return family_; }
  std::size_t arity() const;
  std::size_t rule_count() const;

  /// Method selected by the document's "method" field, or the family
  /// default (mamdani_mtp / ts_mtp).
  const std::string& default_method() const { return method_; }

  /// method: mamdani_mtp | mamdani_classic | ts_mtp | sugeno | wang.
  double eval(const std::string& method, std::span<const double> inputs) const;

  const MamdaniSystem& mamdani() const;
  const TSSystem& ts() const;

 private:
  RuleBase() = default;
  Family family_ = Family::mamdani;
  std::string method_;
  std::optional<MamdaniSystem> mamdani_;
  std::optional<TSSystem> ts_;
};

/// Parses {"antecedent": {...}, "consequent": {...}} into a single rule.
SingleRule parse_single_rule(const std::string& json_text);

}  // namespace mtp

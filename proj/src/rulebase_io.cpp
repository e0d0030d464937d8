#include "rulebase_io.hpp"

#include "json.hpp"

namespace mtp {

namespace {

using nlohmann::json;

TriangularSet parse_triangle(const json& node) {
  if (!node.is_object())
    throw ParseError("triangle must be an object with center/left/right");
  return TriangularSet(node.at("center").get<double>(),
                       node.at("left").get<double>(),
                       node.at("right").get<double>());
}

MamdaniSystem parse_mamdani(const json& doc) {
  const std::size_t arity = doc.at("inputs").get<std::size_t>();
  std::vector<int> signs = doc.value("signs", std::vector<int>(arity, 1));
  if (signs.size() != arity)
    throw ParseError("signs length does not match inputs");

  DeltaMap dmap = DeltaMap::linear(1.0);
  if (doc.contains("delta_map")) {
    const json& dm = doc.at("delta_map");
    const std::string kind = dm.value("kind", "linear");
    const double k = dm.value("k", 1.0);
    if (kind == "linear")
      dmap = DeltaMap::linear(k, dm.value("max_delta", 0.0));
    else if (kind == "power")
      dmap = DeltaMap::power(k);
    else
      throw ParseError("delta_map kind must be linear or power");
  }

  DefuzzMode mode = DefuzzMode::centroid;
  const std::string defuzz = doc.value("defuzz", "centroid");
  if (defuzz == "center_average")
    mode = DefuzzMode::center_average;
  else if (defuzz != "centroid")
    throw ParseError("defuzz must be centroid or center_average");

  std::vector<MamdaniRule> rules;
  for (const json& r : doc.at("rules")) {
    std::vector<TriangularSet> ants;
    for (const json& a : r.at("antecedents")) ants.push_back(parse_triangle(a));
    rules.push_back(MamdaniRule{std::move(ants), parse_triangle(r.at("consequent"))});
  }
  return MamdaniSystem(std::move(rules), std::move(signs), dmap, mode);
}

TSSystem parse_ts(const json& doc) {
  const double epsilon = doc.value("epsilon", 0.0);
  AndOp op = AndOp::min;
  const std::string and_op = doc.value("and_op", "min");
  if (and_op == "product")
    op = AndOp::product;
  else if (and_op != "min")
    throw ParseError("and_op must be min or product");

  std::vector<TSRule> rules;
  for (const json& r : doc.at("rules")) {
    std::vector<TriangularSet> ants;
    for (const json& a : r.at("antecedents")) ants.push_back(parse_triangle(a));
    rules.push_back(
        TSRule{std::move(ants), r.at("coefficients").get<std::vector<double>>()});
  }
  return TSSystem(std::move(rules), epsilon, op);
}

}  // namespace

RuleBase RuleBase::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid rule base document: ") + e.what());
  }
  try {
    RuleBase rb;
    std::string family = doc.value("type", "");
    if (family.empty())
      family = doc.contains("inputs") || doc.contains("signs") ? "mamdani" : "ts";
    if (family == "mamdani") {
      rb.family_ = Family::mamdani;
      rb.mamdani_ = parse_mamdani(doc);
      rb.method_ = doc.value("method", "mamdani_mtp");
    } else if (family == "ts") {
      rb.family_ = Family::ts;
      rb.ts_ = parse_ts(doc);
      rb.method_ = doc.value("method", "ts_mtp");
    } else {
      throw ParseError("rule base type must be mamdani or ts");
    }
    return rb;
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid rule base document: ") + e.what());
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid rule base: ") + e.what());
  }
}

std::size_t RuleBase::arity() const {
  return family_ == Family::mamdani ? mamdani_->arity() : ts_->arity();
}

std::size_t RuleBase::rule_count() const {
  return family_ == Family::mamdani ? mamdani_->rules().size()
                                    : ts_->rules().size();
}

const MamdaniSystem& RuleBase::mamdani() const {
  if (!mamdani_) throw InputError("rule base is not a mamdani document");
  return *mamdani_;
}

const TSSystem& RuleBase::ts() const {
  if (!ts_) throw InputError("rule base is not a ts document");
  return *ts_;
}

double RuleBase::eval(const std::string& method,
                      std::span<const double> inputs) const {
  const std::string m = method.empty() ? method_ : method;
  if (m == "mamdani_mtp") return mamdani_mtp_infer(mamdani(), inputs).crisp;
  if (m == "mamdani_classic")
    return mamdani_classic_infer(mamdani(), inputs).second;
  if (m == "ts_mtp") return ts_mtp_infer(ts(), inputs);
  if (m == "sugeno") return sugeno_infer(ts(), inputs);
  if (m == "wang") return wang_distance_infer_at(ts().rules(), inputs);
  throw InputError("unknown method '" + m + "'");
}

SingleRule parse_single_rule(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid rule document: ") + e.what());
  }
  try {
    return SingleRule{parse_triangle(doc.at("antecedent")),
                      parse_triangle(doc.at("consequent"))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid rule document: ") + e.what());
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid rule: ") + e.what());
  }
}

}  // namespace mtp

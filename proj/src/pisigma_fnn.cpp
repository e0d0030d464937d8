#include "pisigma_fnn.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "fuzzy_core.hpp"
#include "json.hpp"

namespace mtp {

namespace {

constexpr double kMinWidth = 1e-6;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
}

void validate_config(const TrainConfig& cfg) {
  if (!std::isfinite(cfg.learning_rate) || cfg.learning_rate < 0.0)
    throw InputError("learning rate must be nonnegative");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0))
    throw InputError("activation threshold must lie in [0, 1]");
  if (!std::isfinite(cfg.support_factor) || cfg.support_factor <= 0.0)
    throw InputError("support factor must be positive");
  if (cfg.iterations < 0) throw InputError("iteration count must be nonnegative");
}

/// Per-sample working state shared by the forward and gradient passes.
struct Scratch {
  std::vector<double> degree;          // per rule
  std::vector<double> rule_out;        // per rule, valid for active rules
  std::vector<std::uint32_t> gate_dim; // per rule: argmin input (mtp gating)
  std::vector<std::size_t> active;
  double weight_sum = 0.0;
  double y0 = 0.0;

  Scratch(std::size_t rules, std::size_t) { resize(rules); }
  void resize(std::size_t rules) {
    degree.assign(rules, 0.0);
    rule_out.assign(rules, 0.0);
    gate_dim.assign(rules, 0);
    active.reserve(rules);
  }
};

void fill_rho(const FnnParams& p, double kappa, std::vector<double>& rho) {
  rho.resize(p.rule_count() * p.input_count());
  for (std::size_t j = 0; j < p.rule_count(); ++j)
    for (std::size_t i = 0; i < p.input_count(); ++i)
      rho[j * p.input_count() + i] = kappa * std::sqrt(0.5 * p.width(j, i));
}

double rule_output(const FnnParams& p, std::size_t j, const double* x) {
  double y = p.coeff(j, 0);
  for (std::size_t i = 0; i < p.input_count(); ++i)
    y += p.coeff(j, i + 1) * x[i];
  return y;
}

double weighted_average(const FnnParams& p, const double* x, Scratch& ws) {
  if (ws.active.empty())
    throw NoMatchError("no rule reaches the activation threshold");
  double weight_sum = 0.0;
  double value_sum = 0.0;
  for (std::size_t j : ws.active) {
    const double y = rule_output(p, j, x);
    ws.rule_out[j] = y;
    weight_sum += ws.degree[j];
    value_sum += ws.degree[j] * y;
  }
  if (weight_sum <= 0.0)
    throw DegenerateError("active rule weights sum to zero");
  ws.weight_sum = weight_sum;
  ws.y0 = value_sum / weight_sum;
  return ws.y0;
}

/// Movement gating: per-input normalized center distance clamped at 1,
/// rule degree 1 minus the smallest distance. No exponentials.
double forward_mtp(const FnnParams& p, const double* rho, double eps,
                   const double* x, Scratch& ws) {
  const std::size_t s = p.input_count();
  ws.active.clear();
  for (std::size_t j = 0; j < p.rule_count(); ++j) {
    double dmin = 1.0;
    std::uint32_t imin = 0;
    for (std::size_t i = 0; i < s; ++i) {
      double r = std::fabs(x[i] - p.center(j, i)) / rho[j * s + i];
      if (r < dmin) {
        dmin = r;
        imin = std::uint32_t(i);
      }
    }
    ws.degree[j] = 1.0 - dmin;
    ws.gate_dim[j] = imin;
    if (ws.degree[j] >= eps) ws.active.push_back(j);
  }
  return weighted_average(p, x, ws);
}

/// Product-of-Gaussians gating.
double forward_sugeno(const FnnParams& p, const double* x, Scratch& ws) {
  const std::size_t s = p.input_count();
  ws.active.clear();
  for (std::size_t j = 0; j < p.rule_count(); ++j) {
    double w = 1.0;
    for (std::size_t i = 0; i < s; ++i)
      w *= gauss_membership(GaussianSet(p.center(j, i), p.width(j, i)), x[i]);
    ws.degree[j] = w;
    if (w > 0.0) ws.active.push_back(j);
  }
  return weighted_average(p, x, ws);
}

/// Calls the sinks with every nonzero gradient component of the sample
/// loss. All components are computed from the pre-update forward state in
/// `ws`, so sinks may update parameters in place.
template <class ApplyC, class ApplyA, class ApplyB>
void emit_gradients_mtp(const FnnParams& p, const double* rho,
                        const Scratch& ws, const double* x, double yd,
                        ApplyC&& apply_c, ApplyA&& apply_a, ApplyB&& apply_b) {
  const std::size_t s = p.input_count();
  const double e = ws.y0 - yd;
  const double inv_sum = 1.0 / ws.weight_sum;
  for (std::size_t j : ws.active) {
    const double gc = e * ws.degree[j] * inv_sum;
    apply_c(j, 0, gc);
    for (std::size_t i = 0; i < s; ++i) apply_c(j, i + 1, gc * x[i]);

    const std::size_t i_min = ws.gate_dim[j];
    const double a = p.center(j, i_min);
    const double b = p.width(j, i_min);
    const double reach = rho[j * s + i_min];
    const double r = std::fabs(x[i_min] - a) / reach;
    if (r > 1.0) continue;  // clamped: zero gating gradient
    const double gy = e * (ws.rule_out[j] - ws.y0) * inv_sum;
    const double sgn = (x[i_min] - a) >= 0.0 ? 1.0 : -1.0;
    const double ga = gy * sgn / reach;
    const double gb = gy * r / (2.0 * b);
    apply_a(j, i_min, ga);
    apply_b(j, i_min, gb);
  }
}

template <class ApplyC, class ApplyA, class ApplyB>
void emit_gradients_sugeno(const FnnParams& p, const Scratch& ws,
                           const double* x, double yd, ApplyC&& apply_c,
                           ApplyA&& apply_a, ApplyB&& apply_b) {
  const std::size_t s = p.input_count();
  const double e = ws.y0 - yd;
  const double inv_sum = 1.0 / ws.weight_sum;
  for (std::size_t j : ws.active) {
    const double w = ws.degree[j];
    const double gc = e * w * inv_sum;
    apply_c(j, 0, gc);
    for (std::size_t i = 0; i < s; ++i) apply_c(j, i + 1, gc * x[i]);

    const double gy = e * (ws.rule_out[j] - ws.y0) * inv_sum;
    for (std::size_t i = 0; i < s; ++i) {
      const double dxa = x[i] - p.center(j, i);
      const double b = p.width(j, i);
      const double ga = gy * w * 2.0 * dxa / b;
      const double gb = gy * w * dxa * dxa / (b * b);
      apply_a(j, i, ga);
      apply_b(j, i, gb);
    }
  }
}

void check_input(const FnnParams& p, std::span<const double> x) {
  if (x.size() != p.input_count())
    throw InputError("input count does not match the network");
  for (double v : x) require_finite(v, "network input");
}

}  // namespace

FnnParams::FnnParams(std::size_t rule_count, std::size_t input_count)
    : rules_(rule_count),
      inputs_(input_count),
      centers_(rule_count * input_count, 0.0),
      widths_(rule_count * input_count, 1.0),
      coeffs_(rule_count * (input_count + 1), 0.0) {
  if (rule_count == 0 || input_count == 0)
    throw InputError("network needs at least one rule and one input");
}

void FnnParams::validate() const {
  for (double v : centers_) require_finite(v, "center");
  for (double v : widths_) {
    require_finite(v, "width");
    if (v <= 0.0) throw InputError("widths must be positive");
  }
  for (double v : coeffs_) require_finite(v, "coefficient");
}

ForwardResult fnn_forward(const FnnParams& params, const TrainConfig& cfg,
                          std::span<const double> x) {
  validate_config(cfg);
  check_input(params, x);
  Scratch ws(params.rule_count(), params.input_count());
  if (cfg.gating == Gating::mtp_movement) {
    std::vector<double> rho;
    fill_rho(params, cfg.support_factor, rho);
    forward_mtp(params, rho.data(), cfg.epsilon, x.data(), ws);
  } else {
    forward_sugeno(params, x.data(), ws);
  }
  return ForwardResult{ws.y0, std::move(ws.degree), std::move(ws.active)};
}

double fnn_loss(double y0, double yd) {
  require_finite(y0, "network output");
  require_finite(yd, "target");
  const double r = yd - y0;
  return 0.5 * r * r;
}

FnnGradients fnn_gradients(const FnnParams& params, const TrainConfig& cfg,
                           std::span<const double> x, double yd) {
  validate_config(cfg);
  check_input(params, x);
  require_finite(yd, "target");
  Scratch ws(params.rule_count(), params.input_count());
  FnnGradients g;
  g.centers.assign(params.centers().size(), 0.0);
  g.widths.assign(params.widths().size(), 0.0);
  g.coeffs.assign(params.coeffs().size(), 0.0);
  const std::size_t s = params.input_count();
  auto into_c = [&](std::size_t j, std::size_t k, double v) {
    g.coeffs[j * (s + 1) + k] = v;
  };
  auto into_a = [&](std::size_t j, std::size_t i, double v) {
    g.centers[j * s + i] = v;
  };
  auto into_b = [&](std::size_t j, std::size_t i, double v) {
    g.widths[j * s + i] = v;
  };
  if (cfg.gating == Gating::mtp_movement) {
    std::vector<double> rho;
    fill_rho(params, cfg.support_factor, rho);
    forward_mtp(params, rho.data(), cfg.epsilon, x.data(), ws);
    emit_gradients_mtp(params, rho.data(), ws, x.data(), yd, into_c, into_a,
                       into_b);
  } else {
    forward_sugeno(params, x.data(), ws);
    emit_gradients_sugeno(params, ws, x.data(), yd, into_c, into_a, into_b);
  }
  return g;
}

std::vector<long> checkpoint_schedule(long iterations) {
  static const long kBase[] = {100,   500,   1000,  1500,  2000,  4000, 8000,
                               10000, 15000, 18000, 20000, 25000, 30000, 32670};
  std::vector<long> out;
  for (long v : kBase)
    if (v <= iterations) out.push_back(v);
  if (iterations > 0 && (out.empty() || out.back() != iterations))
    out.push_back(iterations);
  return out;
}

double fnn_error_percent(const FnnParams& params, const TrainConfig& cfg,
                         const Dataset& data) {
  validate_config(cfg);
  if (data.records.empty()) throw InputError("dataset is empty");
  Scratch ws(params.rule_count(), params.input_count());
  std::vector<double> rho;
  if (cfg.gating == Gating::mtp_movement)
    fill_rho(params, cfg.support_factor, rho);
  double sum = 0.0;
  for (const Record& rec : data.records) {
    check_input(params, rec.inputs);
    const double y0 = cfg.gating == Gating::mtp_movement
                          ? forward_mtp(params, rho.data(), cfg.epsilon,
                                        rec.inputs.data(), ws)
                          : forward_sugeno(params, rec.inputs.data(), ws);
    if (rec.target == 0.0)
      throw DegenerateError("percentage error undefined for zero target");
    sum += std::fabs(rec.target - y0) / std::fabs(rec.target);
  }
  return 100.0 * sum / double(data.records.size());
}

std::pair<FnnParams, TrainTrace> fnn_train(FnnParams params,
                                           const TrainConfig& cfg,
                                           const Dataset& data) {
  validate_config(cfg);
  params.validate();
  if (data.records.empty()) throw InputError("dataset is empty");
  for (const Record& rec : data.records)
    if (rec.inputs.size() != params.input_count())
      throw InputError("dataset arity does not match the network");

  const std::size_t s = params.input_count();
  const double eta = cfg.learning_rate;
  const double kappa = cfg.support_factor;
  Scratch ws(params.rule_count(), s);
  std::vector<double> rho;
  if (cfg.gating == Gating::mtp_movement) fill_rho(params, kappa, rho);

  auto apply_c = [&](std::size_t j, std::size_t k, double g) {
    params.coeff(j, k) -= eta * g;
  };
  auto apply_a = [&](std::size_t j, std::size_t i, double g) {
    params.center(j, i) -= eta * g;
  };
  auto apply_b_mtp = [&](std::size_t j, std::size_t i, double g) {
    double& b = params.width(j, i);
    b = std::max(b - eta * g, kMinWidth);
    rho[j * s + i] = kappa * std::sqrt(0.5 * b);
  };
  auto apply_b_sugeno = [&](std::size_t j, std::size_t i, double g) {
    double& b = params.width(j, i);
    b = std::max(b - eta * g, kMinWidth);
  };

  TrainTrace trace;
  trace.push_back({0, 0.0, fnn_error_percent(params, cfg, data)});
  const std::vector<long> schedule = checkpoint_schedule(cfg.iterations);
  std::size_t next_cp = 0;
  double seconds = 0.0;

  using clock = std::chrono::steady_clock;
  for (long t = 1; t <= cfg.iterations; ++t) {
    const auto t0 = clock::now();
    for (const Record& rec : data.records) {
      const double* x = rec.inputs.data();
      double y0;
      if (cfg.gating == Gating::mtp_movement) {
        y0 = forward_mtp(params, rho.data(), cfg.epsilon, x, ws);
        if (!std::isfinite(y0))
          throw TrainingDiverged("network output is not finite", t);
        emit_gradients_mtp(params, rho.data(), ws, x, rec.target, apply_c,
                           apply_a, apply_b_mtp);
      } else {
        y0 = forward_sugeno(params, x, ws);
        if (!std::isfinite(y0))
          throw TrainingDiverged("network output is not finite", t);
        emit_gradients_sugeno(params, ws, x, rec.target, apply_c, apply_a,
                              apply_b_sugeno);
      }
    }
    seconds += std::chrono::duration<double>(clock::now() - t0).count();
    if (next_cp < schedule.size() && t == schedule[next_cp]) {
      trace.push_back({t, seconds, fnn_error_percent(params, cfg, data)});
      ++next_cp;
    }
  }
  return {std::move(params), std::move(trace)};
}

std::string params_to_json(const FnnParams& params) {
  nlohmann::json doc;
  doc["rules"] = params.rule_count();
  doc["inputs"] = params.input_count();
  doc["centers"] = params.centers();
  doc["widths"] = params.widths();
  doc["coefficients"] = params.coeffs();
  return doc.dump(2);
}

FnnParams params_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid parameter document: ") + e.what());
  }
  try {
    FnnParams p(doc.at("rules").get<std::size_t>(),
                doc.at("inputs").get<std::size_t>());
    const auto centers = doc.at("centers").get<std::vector<double>>();
    const auto widths = doc.at("widths").get<std::vector<double>>();
    const auto coeffs = doc.at("coefficients").get<std::vector<double>>();
    if (centers.size() != p.centers().size() ||
        widths.size() != p.widths().size() || coeffs.size() != p.coeffs().size())
      throw ParseError("parameter matrix sizes do not match the dimensions");
    for (std::size_t j = 0; j < p.rule_count(); ++j) {
      for (std::size_t i = 0; i < p.input_count(); ++i) {
        p.center(j, i) = centers[j * p.input_count() + i];
        p.width(j, i) = widths[j * p.input_count() + i];
      }
      for (std::size_t k = 0; k <= p.input_count(); ++k)
        p.coeff(j, k) = coeffs[j * (p.input_count() + 1) + k];
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid parameter document: ") + e.what());
  }
}

std::string trace_to_csv(const TrainTrace& trace) {
  std::ostringstream out;
  out << "iteration,seconds,error_percent\n";
  out.precision(17);
  for (const TraceCheckpoint& cp : trace)
    out << cp.iteration << ',' << cp.seconds << ',' << cp.error_percent << '\n';
  return out.str();
}

}  // namespace mtp

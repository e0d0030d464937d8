#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"

namespace mtp {

/// How hidden-rule weights are computed during inference and training.
/// `mtp_movement` gates by normalized center distance and never evaluates
/// an exponential; `sugeno_product` multiplies Gaussian memberships.
enum class Gating { mtp_movement, sugeno_product };

/// Trainable network parameters: per-rule, per-input Gaussian centers and
/// widths plus the linear consequent coefficients (intercept first).
class FnnParams {
 public:
  FnnParams(std::size_t rule_count, std::size_t input_count);

  std::size_t rule_count() const { return rules_; }
  std::size_t input_count() const { return inputs_; }

  double center(std::size_t j, std::size_t i) const { return centers_[j * inputs_ + i]; }
  double& center(std::size_t j, std::size_t i) { return centers_[j * inputs_ + i]; }
  double width(std::size_t j, std::size_t i) const { return widths_[j * inputs_ + i]; }
  double& width(std::size_t j, std::size_t i) { return widths_[j * inputs_ + i]; }

  /// k = 0 is the intercept; k = i + 1 multiplies input i.
  double coeff(std::size_t j, std::size_t k) const { return coeffs_[j * (inputs_ + 1) + k]; }
  double& coeff(std::size_t j, std::size_t k) { return coeffs_[j * (inputs_ + 1) + k]; }

  const std::vector<double>& centers() const { return centers_; }
  const std::vector<double>& widths() const { return widths_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Throws InputError on non-finite values or non-positive widths.
  void validate() const;

 private:
  std::size_t rules_;
  std::size_t inputs_;
  std::vector<double> centers_;
  std::vector<double> widths_;
  std::vector<double> coeffs_;
};

struct TrainConfig {
  double learning_rate = 0.05;
  double epsilon = 0.1;         // rule-activation threshold on the degree
  double support_factor = 3.0;  // effective half-width in standard deviations
  long iterations = 1;          // full passes over the dataset
  std::uint64_t seed = 0;
  Gating gating = Gating::mtp_movement;
};

struct ForwardResult {
  double y0;
  std::vector<double> degrees;        // per rule
  std::vector<std::size_t> active;    // rules contributing to the output
};

/// Loss gradients laid out like FnnParams.
struct FnnGradients {
  std::vector<double> centers;
  std::vector<double> widths;
  std::vector<double> coeffs;
};

struct TraceCheckpoint {
  long iteration;
  double seconds;        // cumulative training-loop wall time
  double error_percent;  // mean absolute percentage error over the dataset
};

using TrainTrace = std::vector<TraceCheckpoint>;

ForwardResult fnn_forward(const FnnParams& params, const TrainConfig& cfg,
                          std::span<const double> x);

/// Squared-error loss (yd - y0)^2 / 2.
double fnn_loss(double y0, double yd);

/// Analytic loss gradients for the configured gating. Rules outside the
/// active set receive zero gradient; at the min/clamp kinks the one-sided
/// derivative from below is used.
FnnGradients fnn_gradients(const FnnParams& params, const TrainConfig& cfg,
                           std::span<const double> x, double yd);

/// Per-sample gradient descent over the dataset in record order, one full
/// pass per iteration. Widths are floored at a small positive minimum
/// after each update. The trace records the initial state, the standard
/// checkpoint schedule up to cfg.iterations, and the final iteration.
std::pair<FnnParams, TrainTrace> fnn_train(FnnParams params,
                                           const TrainConfig& cfg,
                                           const Dataset& data);

/// Mean absolute percentage error of the network over the dataset.
double fnn_error_percent(const FnnParams& params, const TrainConfig& cfg,
                         const Dataset& data);

/// Checkpoint iterations recorded by fnn_train for a given pass budget.
std::vector<long> checkpoint_schedule(long iterations);

std::string params_to_json(const FnnParams& params);
FnnParams params_from_json(const std::string& text);
std::string trace_to_csv(const TrainTrace& trace);

}  // namespace mtp

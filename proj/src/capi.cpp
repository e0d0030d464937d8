#include "mtpfuzzy.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "baselines.hpp"
#include "experiments.hpp"
#include "mtp_inference.hpp"
#include "pisigma_fnn.hpp"
#include "rulebase_io.hpp"

namespace {

thread_local std::string g_last_error;

mtp_status fail(mtp_status code, const char* what) {
  g_last_error = what;
  return code;
}

template <class Fn>
mtp_status guarded(Fn&& fn) {
  try {
    fn();
    return MTP_OK;
  } catch (const mtp::ParseError& e) {
    return fail(MTP_ERR_PARSE, e.what());
  } catch (const mtp::NoMatchError& e) {
    return fail(MTP_ERR_NO_MATCH, e.what());
  } catch (const mtp::TrainingDiverged& e) {
    return fail(MTP_ERR_DIVERGED, e.what());
  } catch (const mtp::DegenerateError& e) {
    return fail(MTP_ERR_DEGENERATE, e.what());
  } catch (const mtp::UnsupportedError& e) {
    return fail(MTP_ERR_UNSUPPORTED, e.what());
  } catch (const mtp::InputError& e) {
    return fail(MTP_ERR_INVALID_ARG, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(MTP_ERR_IO, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(MTP_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(MTP_ERR_INTERNAL, e.what());
  }
}

mtp::TriangularSet to_triangle(const mtp_triangle& t) {
  return mtp::TriangularSet(t.center, t.left_width, t.right_width);
}

mtp_triangle from_triangle(const mtp::TriangularSet& t) {
  return mtp_triangle{t.center(), t.left_width(), t.right_width()};
}

mtp::DeltaMap to_delta_map(const mtp_delta_map* dmap) {
  if (!dmap) return mtp::DeltaMap::linear(1.0);
  if (dmap->kind == MTP_DELTA_LINEAR)
    return mtp::DeltaMap::linear(dmap->k,
                                 dmap->max_delta > 0.0 ? dmap->max_delta : 0.0);
  if (dmap->kind == MTP_DELTA_POWER) return mtp::DeltaMap::power(dmap->k);
  throw mtp::InputError("unknown delta map kind");
}

}  // namespace

extern "C" {

const char* mtp_version(void) { return "1.0.0"; }

const char* mtp_status_name(mtp_status status) {
  switch (status) {
    case MTP_OK: return "ok";
    case MTP_ERR_INVALID_ARG: return "invalid_argument";
    case MTP_ERR_PARSE: return "parse_error";
    case MTP_ERR_NO_MATCH: return "no_match";
    case MTP_ERR_DIVERGED: return "training_diverged";
    case MTP_ERR_DEGENERATE: return "degenerate";
    case MTP_ERR_UNSUPPORTED: return "unsupported";
    case MTP_ERR_IO: return "io_error";
    case MTP_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* mtp_last_error(void) { return g_last_error.c_str(); }

mtp_status mtp_tri_membership(const mtp_triangle* set, double u, double* out) {
  if (!set || !out) return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] { *out = mtp::tri_membership(to_triangle(*set), u); });
}

mtp_status mtp_rule_parse_json(const char* json_text, mtp_triangle* antecedent,
                               mtp_triangle* consequent) {
  if (!json_text || !antecedent || !consequent)
    return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const mtp::SingleRule rule = mtp::parse_single_rule(json_text);
    *antecedent = from_triangle(rule.antecedent);
    *consequent = from_triangle(rule.consequent);
  });
}

mtp_status mtp_single_rule_infer(const mtp_triangle* antecedent,
                                 const mtp_triangle* consequent,
                                 const mtp_observation* obs,
                                 const mtp_delta_map* dmap,
                                 double index_coefficient, int mode,
                                 mtp_infer_result* out) {
  if (!antecedent || !consequent || !obs || !out)
    return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const mtp::SingleRule rule{to_triangle(*antecedent),
                               to_triangle(*consequent)};
    const mtp::Observation observation =
        obs->is_crisp ? mtp::Observation::crisp(obs->x0)
                      : mtp::Observation::structured(obs->shift, obs->exponent,
                                                     obs->negated != 0);
    const mtp::DeltaMap map = to_delta_map(dmap);
    const mtp::IndexMap imap{index_coefficient};
    std::optional<mtp::MtpSet> result;
    if (mode == MTP_MODE_FMP)
      result = mtp::fmp_infer(rule, observation, map, imap);
    else if (mode == MTP_MODE_FMT)
      result = mtp::fmt_infer(rule, observation, map, imap);
    else
      throw mtp::InputError("mode must be MTP_MODE_FMP or MTP_MODE_FMT");
    if (!result)
      throw mtp::NoMatchError(
          "observation and matched set have disjoint supports");

    out->base = from_triangle(result->base());
    out->shift = result->shift();
    out->exponent = result->exponent();
    out->negated = result->negated() ? 1 : 0;
    out->support_lo = result->support_lo();
    out->support_hi = result->support_hi();
    const mtp::GridSpec grid =
        mtp::default_grid(result->support_lo(), result->support_hi());
    out->centroid = mtp::centroid_defuzzify(mtp::sample(*result, grid));
  });
}

struct mtp_rulebase {
  mtp::RuleBase impl;
};

mtp_status mtp_rulebase_parse_json(const char* json_text, mtp_rulebase** out) {
  if (!json_text || !out) return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    auto rb = std::unique_ptr<mtp_rulebase>(
        new mtp_rulebase{mtp::RuleBase::parse(json_text)});
    *out = rb.release();
  });
}

void mtp_rulebase_free(mtp_rulebase* rb) { delete rb; }

size_t mtp_rulebase_arity(const mtp_rulebase* rb) {
  return rb ? rb->impl.arity() : 0;
}

size_t mtp_rulebase_rule_count(const mtp_rulebase* rb) {
  return rb ? rb->impl.rule_count() : 0;
}

mtp_status mtp_rulebase_eval(const mtp_rulebase* rb, const char* method,
                             const double* inputs, size_t n_inputs,
                             double* crisp_out) {
  if (!rb || !inputs || !crisp_out)
    return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    *crisp_out = rb->impl.eval(method ? method : "",
                               std::span<const double>(inputs, n_inputs));
  });
}

mtp_status mtp_train(const mtp_train_options* options,
                     mtp_train_summary* out) {
  if (!options || !out) return fail(MTP_ERR_INVALID_ARG, "null argument");
  if (!options->dataset_csv)
    return fail(MTP_ERR_INVALID_ARG, "dataset path is null");
  return guarded([&] {
    mtp::Dataset data =
        mtp::load_dataset(options->dataset_csv, options->arity);
    if (options->dataset_name && *options->dataset_name)
      data.name = options->dataset_name;

    mtp::ExperimentConfig cfg;
    cfg.train.learning_rate = options->learning_rate;
    cfg.train.epsilon = options->epsilon;
    cfg.train.support_factor = options->support_factor;
    cfg.train.iterations = options->iterations;
    cfg.train.seed = options->seed;
    cfg.timing_runs = 1;
    const mtp::Gating gating = options->gating == MTP_GATING_SUGENO
                                   ? mtp::Gating::sugeno_product
                                   : mtp::Gating::mtp_movement;

    const auto reports = mtp::run_experiment(
        data, mtp::PartitionSpec(options->levels), {gating}, cfg);
    const mtp::RunReport& report = reports.front();
    if (options->output_dir)
      mtp::write_report(report, data.name, options->seed, options->output_dir);

    out->rule_count = report.rule_count;
    out->iterations = report.trace.back().iteration;
    out->final_error_percent = report.final_error_percent;
    out->train_seconds = report.total_seconds;
  });
}

mtp_status mtp_reproduce(const char* precipitation_csv,
                         const char* security_csv, const char* output_dir,
                         int quick, uint64_t seed, unsigned max_threads,
                         mtp_reproduce_summary* out) {
  if (!precipitation_csv || !security_csv || !output_dir || !out)
    return fail(MTP_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    const mtp::ReproduceSummary s =
        mtp::reproduce(precipitation_csv, security_csv, output_dir, quick != 0,
                       seed, max_threads);
    out->precip_mtp_error = s.precip_mtp_error;
    out->precip_sugeno_error = s.precip_sugeno_error;
    out->precip_speed_ratio = s.precip_speed_ratio;
    out->security_mtp_error = s.security_mtp_error;
    out->security_sugeno_error = s.security_sugeno_error;
    out->security_speed_ratio = s.security_speed_ratio;
    out->bands_passed = s.bands_passed ? 1 : 0;
  });
}

}  // extern "C"

/* mtpfuzzy - movement-transformation fuzzy reasoning engine.
 *
 * C interface of the shared library. All functions return mtp_status;
 * outputs are written through pointers. A thread-local message for the
 * most recent failure is available via mtp_last_error().
 */
#ifndef MTPFUZZY_H
#define MTPFUZZY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mtp_status {
  MTP_OK = 0,
  MTP_ERR_INVALID_ARG = 1,  /* bad parameter or malformed value */
  MTP_ERR_PARSE = 2,        /* malformed document or data file */
  MTP_ERR_NO_MATCH = 3,     /* empty reasoning result / no active rule */
  MTP_ERR_DIVERGED = 4,     /* training produced a non-finite value */
  MTP_ERR_DEGENERATE = 5,   /* zero weights, coincident distances, ... */
  MTP_ERR_UNSUPPORTED = 6,  /* composition the engine refuses to define */
  MTP_ERR_IO = 7,
  MTP_ERR_INTERNAL = 8
} mtp_status;

const char* mtp_version(void);
const char* mtp_status_name(mtp_status status);

/* Message describing the most recent failure on this thread. Valid until
 * the next failing call. */
const char* mtp_last_error(void);

/* ---- fuzzy sets and single-rule inference ---- */

typedef struct mtp_triangle {
  double center;
  double left_width;
  double right_width;
} mtp_triangle;

/* Membership of u in a triangular set. */
mtp_status mtp_tri_membership(const mtp_triangle* set, double u, double* out);

typedef struct mtp_observation {
  int is_crisp;    /* nonzero: use x0 and ignore the structured fields */
  double x0;
  double shift;    /* structured: translation of the matched set */
  double exponent; /* structured: power hedge, > 0; 1 when negated */
  int negated;     /* structured: complemented observation */
} mtp_observation;

enum { MTP_DELTA_LINEAR = 0, MTP_DELTA_POWER = 1 };

typedef struct mtp_delta_map {
  int kind;         /* MTP_DELTA_LINEAR or MTP_DELTA_POWER */
  double k;
  double max_delta; /* linear: upper bound for k; <= 0 means unbounded */
} mtp_delta_map;

enum { MTP_MODE_FMP = 0, MTP_MODE_FMT = 1 };

typedef struct mtp_infer_result {
  mtp_triangle base;   /* carrier set of the result */
  double shift;
  double exponent;
  int negated;
  double support_lo;   /* shifted carrier support */
  double support_hi;
  double centroid;     /* defuzzified on the default grid */
} mtp_infer_result;

/* Parses {"antecedent": {center,left,right}, "consequent": {...}}. */
mtp_status mtp_rule_parse_json(const char* json_text, mtp_triangle* antecedent,
                               mtp_triangle* consequent);

/* Single-rule inference. MTP_MODE_FMP matches the observation against the
 * antecedent and emits the consequent; MTP_MODE_FMT exchanges the roles.
 * index_coefficient scales the extracted exponent (1 keeps it).
 * Returns MTP_ERR_NO_MATCH when the observation and the matched set have
 * disjoint supports. */
mtp_status mtp_single_rule_infer(const mtp_triangle* antecedent,
                                 const mtp_triangle* consequent,
                                 const mtp_observation* obs,
                                 const mtp_delta_map* dmap,
                                 double index_coefficient, int mode,
                                 mtp_infer_result* out);

/* ---- rule-base evaluation ---- */

typedef struct mtp_rulebase mtp_rulebase;

/* Parses a mamdani or ts rule-base document (see README for the schema). */
mtp_status mtp_rulebase_parse_json(const char* json_text, mtp_rulebase** out);
void mtp_rulebase_free(mtp_rulebase* rb);

size_t mtp_rulebase_arity(const mtp_rulebase* rb);
size_t mtp_rulebase_rule_count(const mtp_rulebase* rb);

/* method: "mamdani_mtp", "mamdani_classic", "ts_mtp", "sugeno", "wang",
 * or NULL/"" for the document's default. */
mtp_status mtp_rulebase_eval(const mtp_rulebase* rb, const char* method,
                             const double* inputs, size_t n_inputs,
                             double* crisp_out);

/* ---- neural network training and experiment reproduction ---- */

enum { MTP_GATING_MOVEMENT = 0, MTP_GATING_SUGENO = 1 };

typedef struct mtp_train_options {
  const char* dataset_csv;  /* CSV with header label,x1,...,xs,target */
  size_t arity;
  size_t levels;            /* fuzzy partitions per input (rule grid) */
  int gating;               /* MTP_GATING_MOVEMENT or MTP_GATING_SUGENO */
  double learning_rate;
  double epsilon;           /* rule-activation threshold */
  double support_factor;    /* movement gating reach, in std deviations */
  long iterations;          /* full passes over the dataset */
  uint64_t seed;
  const char* output_dir;   /* NULL: do not write report files */
  const char* dataset_name; /* NULL: derive from the CSV file name */
} mtp_train_options;

typedef struct mtp_train_summary {
  size_t rule_count;
  long iterations;
  double final_error_percent;
  double train_seconds;
} mtp_train_summary;

/* Builds the rule grid from the data, trains, optionally writes the
 * report bundle ({dataset}_{method}_{seed}.records.csv / .trace.csv /
 * .summary.json / .params.json) into output_dir. */
mtp_status mtp_train(const mtp_train_options* options,
                     mtp_train_summary* out);

typedef struct mtp_reproduce_summary {
  double precip_mtp_error;
  double precip_sugeno_error;
  double precip_speed_ratio;
  double security_mtp_error;
  double security_sugeno_error;
  double security_speed_ratio;
  int bands_passed;
} mtp_reproduce_summary;

/* Runs both benchmark experiments with both gatings and writes the full
 * report bundle plus reproduce_summary.json into output_dir. quick caps
 * the pass count for smoke runs; max_threads >= 2 runs the two datasets
 * concurrently. */
mtp_status mtp_reproduce(const char* precipitation_csv,
                         const char* security_csv, const char* output_dir,
                         int quick, uint64_t seed, unsigned max_threads,
                         mtp_reproduce_summary* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MTPFUZZY_H */

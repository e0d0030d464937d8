#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace mtp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  if (t.empty()) throw ParseError("empty numeric field", line_no);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw ParseError("malformed number '" + t + "'", line_no);
  return v;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path, std::size_t arity) {
  if (arity == 0) throw InputError("dataset arity must be positive");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("dataset file is empty", 1);
  ++line_no;
  const auto header = split_csv_line(line);
  if (header.size() != arity + 2)
    throw ParseError("header needs label,x1..x" + std::to_string(arity) +
                         ",target columns",
                     line_no);
  if (trim(header.front()) != "label" || trim(header.back()) != "target")
    throw ParseError("header must be label,x1,...,target", line_no);

  Dataset data;
  data.arity = arity;
  data.name = path.stem().string();
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != arity + 2)
      throw ParseError("expected " + std::to_string(arity + 2) + " fields",
                       line_no);
    Record rec;
    rec.label = trim(fields.front());
    rec.inputs.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i)
      rec.inputs.push_back(parse_number(fields[i + 1], line_no));
    rec.target = parse_number(fields.back(), line_no);
    data.records.push_back(std::move(rec));
  }
  if (data.records.empty())
    throw ParseError("dataset has no records", line_no);
  return data;
}

std::uint64_t fixture_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file " + path.string());
  std::uint64_t h = 14695981039346656037ull;
  char c;
  while (in.get(c)) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  return h;
}

PartitionSpec::PartitionSpec(std::size_t levels) : levels_per_input(levels) {
  if (levels < 2) throw InputError("partition needs at least 2 levels");
}

std::pair<FnnParams, std::size_t> build_rule_grid(const PartitionSpec& spec,
                                                  const Dataset& data) {
  if (data.records.empty()) throw InputError("dataset is empty");
  const std::size_t s = data.arity;
  const std::size_t levels = spec.levels_per_input;

  std::vector<double> lo(s, std::numeric_limits<double>::infinity());
  std::vector<double> hi(s, -std::numeric_limits<double>::infinity());
  double target_sum = 0.0;
  for (const Record& rec : data.records) {
    if (rec.inputs.size() != s)
      throw InputError("record arity does not match dataset arity");
    for (std::size_t i = 0; i < s; ++i) {
      lo[i] = std::min(lo[i], rec.inputs[i]);
      hi[i] = std::max(hi[i], rec.inputs[i]);
    }
    target_sum += rec.target;
  }
  std::vector<double> spacing(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (!(hi[i] > lo[i]))
      throw InputError("input " + std::to_string(i + 1) +
                       " is constant; cannot partition");
    spacing[i] = (hi[i] - lo[i]) / double(levels - 1);
  }

  std::size_t count = 1;
  for (std::size_t i = 0; i < s; ++i) count *= levels;

  FnnParams params(count, s);
  const double mean_target = target_sum / double(data.records.size());
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t rem = j;
    for (std::size_t i = s; i-- > 0;) {  // last input varies fastest
      const std::size_t level = rem % levels;
      rem /= levels;
      params.center(j, i) = lo[i] + double(level) * spacing[i];
      params.width(j, i) = spacing[i] * spacing[i];
    }
    params.coeff(j, 0) = mean_target;
    for (std::size_t k = 1; k <= s; ++k) params.coeff(j, k) = 0.0;
  }
  return {std::move(params), count};
}

double mape(std::span<const double> targets, std::span<const double> results) {
  if (targets.size() != results.size())
    throw InputError("target and result counts differ");
  if (targets.empty()) throw InputError("cannot average zero records");
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] == 0.0)
      throw DegenerateError("percentage error undefined for zero target");
    sum += std::fabs(targets[i] - results[i]) / std::fabs(targets[i]);
  }
  return 100.0 * sum / double(targets.size());
}

std::vector<int> estimate_signs(const Dataset& data) {
  const std::size_t s = data.arity;
  const double n = double(data.records.size());
  std::vector<double> mean_x(s, 0.0);
  double mean_t = 0.0;
  for (const Record& rec : data.records) {
    for (std::size_t i = 0; i < s; ++i) mean_x[i] += rec.inputs[i];
    mean_t += rec.target;
  }
  for (double& m : mean_x) m /= n;
  mean_t /= n;
  std::vector<int> signs(s, 1);
  for (std::size_t i = 0; i < s; ++i) {
    double cov = 0.0;
    for (const Record& rec : data.records)
      cov += (rec.inputs[i] - mean_x[i]) * (rec.target - mean_t);
    signs[i] = cov < 0.0 ? -1 : 1;
  }
  return signs;
}

const char* gating_name(Gating gating) {
  return gating == Gating::mtp_movement ? "mtp_movement" : "sugeno_product";
}

namespace {

RunReport run_one_method(const Dataset& data, const FnnParams& init,
                         std::size_t rule_count, Gating gating,
                         const ExperimentConfig& cfg) {
  TrainConfig train = cfg.train;
  train.gating = gating;
  const int runs = std::max(1, cfg.timing_runs);

  std::vector<std::pair<FnnParams, TrainTrace>> outcomes;
  outcomes.reserve(runs);
  try {
    for (int r = 0; r < runs; ++r) outcomes.push_back(fnn_train(init, train, data));
  } catch (const TrainingDiverged& e) {
    throw TrainingDiverged(std::string(gating_name(gating)) + ": " + e.what(),
                           e.iteration);
  } catch (const NoMatchError& e) {
    throw NoMatchError(std::string(gating_name(gating)) + ": " + e.what(),
                       e.movements);
  }

  // Runs are deterministic; only the wall time differs. Report the median.
  std::vector<int> order(outcomes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return outcomes[a].second.back().seconds < outcomes[b].second.back().seconds;
  });
  auto& [params, trace] = outcomes[order[order.size() / 2]];

  RunReport report{gating_name(gating),
                   std::move(trace),
                   {},
                   0.0,
                   0.0,
                   1.0,
                   rule_count,
                   std::move(params)};
  report.final_error_percent = report.trace.back().error_percent;
  report.total_seconds = report.trace.back().seconds;
  report.per_record.reserve(data.records.size());
  for (const Record& rec : data.records) {
    const double y = fnn_forward(report.params, train, rec.inputs).y0;
    report.per_record.push_back(
        PerRecordResult{rec.label, rec.target, y, rec.target - y});
  }
  return report;
}

}  // namespace

std::vector<RunReport> run_experiment(const Dataset& data,
                                      const PartitionSpec& spec,
                                      const std::vector<Gating>& methods,
                                      const ExperimentConfig& cfg) {
  if (methods.empty()) throw InputError("no methods requested");
  auto [init, rule_count] = build_rule_grid(spec, data);

  std::vector<RunReport> reports;
  reports.reserve(methods.size());
  for (Gating g : methods)
    reports.push_back(run_one_method(data, init, rule_count, g, cfg));

  // Speed ratio of the baseline to each run, when the baseline is present.
  const RunReport* baseline = nullptr;
  for (const RunReport& r : reports)
    if (r.method == gating_name(Gating::sugeno_product)) baseline = &r;
  if (baseline) {
    for (RunReport& r : reports) {
      if (baseline->total_seconds > 0.0 && r.total_seconds > 0.0)
        r.speed_ratio_vs_baseline = baseline->total_seconds / r.total_seconds;
      else
        r.speed_ratio_vs_baseline = 1.0;
    }
  }
  return reports;
}

std::filesystem::path write_report(const RunReport& report,
                                   const std::string& dataset_name,
                                   std::uint64_t seed,
                                   const std::filesystem::path& outdir) {
  std::filesystem::create_directories(outdir);
  const std::string base =
      dataset_name + "_" + report.method + "_" + std::to_string(seed);

  {
    std::ofstream out(outdir / (base + ".records.csv"));
    out << "label,target,result,error\n";
    out.precision(17);
    for (const PerRecordResult& r : report.per_record)
      out << r.label << ',' << r.target << ',' << r.result << ',' << r.error
          << '\n';
  }
  {
    std::ofstream out(outdir / (base + ".trace.csv"));
    out << trace_to_csv(report.trace);
  }
  {
    std::ofstream out(outdir / (base + ".params.json"));
    out << params_to_json(report.params) << '\n';
  }

  nlohmann::json doc;
  doc["dataset"] = dataset_name;
  doc["method"] = report.method;
  doc["seed"] = seed;
  doc["rule_count"] = report.rule_count;
  doc["iterations"] = report.trace.back().iteration;
  doc["final_error_percent"] = report.final_error_percent;
  doc["total_seconds"] = report.total_seconds;
  doc["speed_ratio_vs_baseline"] = report.speed_ratio_vs_baseline;
  doc["files"] = {{"records", base + ".records.csv"},
                  {"trace", base + ".trace.csv"},
                  {"params", base + ".params.json"}};
  const auto summary_path = outdir / (base + ".summary.json");
  std::ofstream out(summary_path);
  out << doc.dump(2) << '\n';
  return summary_path;
}

ReproduceSummary reproduce(const std::filesystem::path& precipitation_csv,
                           const std::filesystem::path& security_csv,
                           const std::filesystem::path& outdir, bool quick,
                           std::uint64_t seed, unsigned max_threads) {
  const Dataset precip = load_dataset(precipitation_csv, 2);
  const Dataset security = load_dataset(security_csv, 3);
  std::filesystem::create_directories(outdir);

  ExperimentConfig cfg;
  cfg.train.iterations = quick ? ReproduceBands::kQuickIterations
                               : ReproduceBands::kFullIterations;
  cfg.train.seed = seed;
  cfg.timing_runs = quick ? 1 : 3;
  const std::vector<Gating> methods{Gating::mtp_movement,
                                    Gating::sugeno_product};

  auto precip_job = [&] {
    return run_experiment(precip, PartitionSpec(6), methods, cfg);
  };
  auto security_job = [&] {
    return run_experiment(security, PartitionSpec(3), methods, cfg);
  };

  std::vector<RunReport> precip_reports, security_reports;
  if (max_threads >= 2) {
    auto fut = std::async(std::launch::async, precip_job);
    security_reports = security_job();
    precip_reports = fut.get();
  } else {
    precip_reports = precip_job();
    security_reports = security_job();
  }

  for (const RunReport& r : precip_reports)
    write_report(r, precip.name, seed, outdir);
  for (const RunReport& r : security_reports)
    write_report(r, security.name, seed, outdir);

  auto find = [](const std::vector<RunReport>& rs, Gating g) -> const RunReport& {
    for (const RunReport& r : rs)
      if (r.method == gating_name(g)) return r;
    throw InputError("missing report");
  };
  const RunReport& pm = find(precip_reports, Gating::mtp_movement);
  const RunReport& ps = find(precip_reports, Gating::sugeno_product);
  const RunReport& sm = find(security_reports, Gating::mtp_movement);
  const RunReport& ss = find(security_reports, Gating::sugeno_product);

  ReproduceSummary summary;
  summary.quick = quick;
  summary.precip_mtp_error = pm.final_error_percent;
  summary.precip_sugeno_error = ps.final_error_percent;
  summary.precip_speed_ratio = pm.speed_ratio_vs_baseline;
  summary.security_mtp_error = sm.final_error_percent;
  summary.security_sugeno_error = ss.final_error_percent;
  summary.security_speed_ratio = sm.speed_ratio_vs_baseline;

  const bool b1 = summary.precip_mtp_error <= ReproduceBands::kPrecipMtpMaxError;
  const bool b2 = summary.precip_sugeno_error > summary.precip_mtp_error;
  const bool b3 = summary.precip_speed_ratio > ReproduceBands::kPrecipMinSpeedRatio;
  const bool b4 = summary.security_mtp_error <= ReproduceBands::kSecurityMaxError;
  const bool b5 =
      summary.security_sugeno_error <= ReproduceBands::kSecurityMaxError;
  const bool b6 =
      summary.security_speed_ratio > ReproduceBands::kSecurityMinSpeedRatio;
  summary.bands_passed = b1 && b2 && b3 && b4 && b5 && b6;

  nlohmann::json doc;
  doc["quick"] = quick;
  doc["seed"] = seed;
  doc["precipitation"] = {
      {"mtp_error_percent", summary.precip_mtp_error},
      {"sugeno_error_percent", summary.precip_sugeno_error},
      {"speed_ratio", summary.precip_speed_ratio}};
  doc["security"] = {{"mtp_error_percent", summary.security_mtp_error},
                     {"sugeno_error_percent", summary.security_sugeno_error},
                     {"speed_ratio", summary.security_speed_ratio}};
  doc["bands"] = {
      {"precipitation_mtp_error_at_most_12", b1},
      {"precipitation_sugeno_error_exceeds_mtp", b2},
      {"precipitation_speed_ratio_above_1_5", b3},
      {"security_mtp_error_at_most_6", b4},
      {"security_sugeno_error_at_most_6", b5},
      {"security_speed_ratio_above_1_0", b6}};
  doc["bands_passed"] = summary.bands_passed;
  std::ofstream out(outdir / "reproduce_summary.json");
  out << doc.dump(2) << '\n';
  return summary;
}

}  // namespace mtp

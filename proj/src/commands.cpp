#include "abm/commands.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "abm/report_io.hpp"
#include "abm/sim.hpp"

namespace abm::cli {

using nlohmann::json;

std::vector<Eigen::Index> parse_lags(const std::string& text) {
  std::vector<Eigen::Index> lags;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long lag = std::stol(item, &used);
      if (used != item.size() || lag < 1) throw std::invalid_argument(item);
      lags.push_back(lag);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, fmt::format("lags: '{}' is not a positive integer", item));
    }
  }
  if (lags.empty()) throw Error(ErrorKind::ConfigError, "lags: empty list");
  return lags;
}

namespace {

std::string path_in(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string window_text(const std::optional<Date>& from, const std::optional<Date>& to) {
  if (!from && !to) return {};
  return fmt::format(" [{}..{}]", from ? format_iso_date(*from) : "", to ? format_iso_date(*to) : "");
}

std::string column_title(const AnalysisColumn& c) {
  return fmt::format("{}{} {}", c.label, window_text(c.from, c.to), to_string(c.kind));
}

std::string hill_row_name(double tail_fraction) { return fmt::format("Hill {:g}%", tail_fraction * 100.0); }

json date_json(const std::optional<Date>& d) { return d ? json(format_iso_date(*d)) : json(nullptr); }

// Report or error for one kind of a return series.
std::variant<stats::StatsReport, std::string> try_report(const ReturnSeries& returns,
                                                        const std::vector<Eigen::Index>& lags,
                                                        double tail_fraction) {
  try {
    return stats::full_report(returns, lags, tail_fraction);
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

json report_or_error(const std::variant<stats::StatsReport, std::string>& r) {
  if (const auto* report = std::get_if<stats::StatsReport>(&r)) return io::to_json(*report);
  return {{"error", std::get<std::string>(r)}};
}

}  // namespace

Analysis analyze_columns(const AnalyzeOptions& options) {
  std::vector<ManifestEntry> entries;
  std::optional<Manifest> manifest;
  if (options.manifest) {
    manifest = load_manifest(*options.manifest);
    for (auto entry : manifest->entries) {
      if (!entry.from) entry.from = options.from;
      if (!entry.to) entry.to = options.to;
      entries.push_back(std::move(entry));
    }
  }
  for (const auto& input : options.inputs) {
    ManifestEntry entry;
    entry.path = input;
    entry.label = std::filesystem::path(input).stem().string();
    entry.spec.price_column = options.price_column;
    entry.from = options.from;
    entry.to = options.to;
    entries.push_back(std::move(entry));
  }

  Analysis analysis;
  if (options.lags) {
    analysis.lags = *options.lags;
  } else if (manifest && manifest->lags) {
    analysis.lags.assign(manifest->lags->begin(), manifest->lags->end());
  } else {
    analysis.lags = stats::kDefaultLags;
  }
  analysis.tail_fraction = options.tail_fraction.value_or(
      manifest && manifest->tail_fraction ? *manifest->tail_fraction : stats::kDefaultTailFraction);

  std::vector<ReturnKind> kinds;
  if (options.raw) kinds.push_back(ReturnKind::raw);
  if (options.absolute) kinds.push_back(ReturnKind::absolute);

  for (const auto& entry : entries) {
    AnalysisColumn base;
    base.label = entry.label;
    base.source = entry.path;
    base.from = entry.from;
    base.to = entry.to;
    std::optional<ReturnSeries> raw;
    std::string failure;
    try {
      const auto ingested = read_prices(entry.path, entry.spec, entry.from, entry.to);
      base.rows_used = ingested.rows_used;
      base.rows_skipped = ingested.rows_skipped;
      raw = log_returns(ingested.series);
    } catch (const Error& e) {
      failure = e.what();
    }
    for (const auto kind : kinds) {
      AnalysisColumn column = base;
      column.kind = kind;
      if (!raw) {
        column.result = failure;
      } else {
        column.result = try_report(kind == ReturnKind::raw ? *raw : absolute_returns(*raw), analysis.lags,
                                   analysis.tail_fraction);
      }
      analysis.columns.push_back(std::move(column));
    }
  }
  return analysis;
}

int cmd_analyze(const AnalyzeOptions& options, std::ostream& log) {
  const auto analysis = analyze_columns(options);
  if (analysis.columns.empty()) {
    log << "analyze: no inputs (use --input or --manifest)\n";
    return 2;
  }

  std::vector<std::string> row_names{"Skew", "Excess Kurtosis", hill_row_name(analysis.tail_fraction)};
  for (const auto lag : analysis.lags) row_names.push_back(fmt::format("AutoCorr {}", lag));
  row_names.emplace_back("Sample Size");

  std::vector<std::vector<std::string>> cells(row_names.size());
  std::string csv = "statistic";
  json columns = json::array();
  std::size_t ok = 0;
  for (const auto& column : analysis.columns) {
    csv += "," + io::csv_field(column_title(column));
    json entry = {{"title", column_title(column)},
                  {"label", column.label},
                  {"source", column.source},
                  {"from", date_json(column.from)},
                  {"to", date_json(column.to)},
                  {"kind", std::string(to_string(column.kind))},
                  {"rows_used", column.rows_used},
                  {"rows_skipped", column.rows_skipped}};
    if (const auto* report = std::get_if<stats::StatsReport>(&column.result)) {
      ++ok;
      std::size_t r = 0;
      cells[r++].push_back(io::fixed5(report->skew));
      cells[r++].push_back(io::fixed5(report->excess_kurtosis));
      cells[r++].push_back(io::fixed5(report->hill));
      for (const auto lag : analysis.lags) cells[r++].push_back(io::fixed5(report->acf_at_lags.at(lag)));
      cells[r++].push_back(std::to_string(report->sample_size));
      entry["statistics"] = io::to_json(*report);
      entry["error"] = nullptr;
    } else {
      const auto& message = std::get<std::string>(column.result);
      for (auto& row : cells) row.push_back(io::csv_field("error: " + message));
      entry["statistics"] = nullptr;
      entry["error"] = message;
      log << "analyze: " << column_title(column) << ": " << message << "\n";
    }
    columns.push_back(std::move(entry));
  }
  csv += "\n";
  for (std::size_t r = 0; r < row_names.size(); ++r) {
    csv += io::csv_field(row_names[r]);
    for (const auto& cell : cells[r]) csv += "," + cell;
    csv += "\n";
  }
  io::write_text(path_in(options.out_dir, "table.csv"), csv);
  io::write_json(path_in(options.out_dir, "table.json"),
                 {{"lags", analysis.lags}, {"tail_fraction", analysis.tail_fraction}, {"columns", columns}});
  log << fmt::format("analyze: {}/{} columns computed\n", ok, analysis.columns.size());
  return ok == 0 ? 1 : 0;
}

int cmd_simulate(const SimulateOptions& options, std::ostream& log) {
  RunConfig config = load_run_config(options.config);
  if (options.seed) config.seed = *options.seed;
  try {
    const auto output = run_simulation(config);
    io::write_series_csv(path_in(options.out_dir, "log_prices.csv"), "log_price", output.log_prices);
    io::write_series_csv(path_in(options.out_dir, "returns.csv"), "return", output.returns.values());
    io::write_json(path_in(options.out_dir, "diagnostics.json"),
                   {{"config", to_json(config)}, {"diagnostics", io::to_json(output.diagnostics)}});
    io::write_json(path_in(options.out_dir, "report.json"),
                   {{"raw", report_or_error(try_report(output.returns, options.lags, options.tail_fraction))},
                    {"absolute", report_or_error(try_report(absolute_returns(output.returns), options.lags,
                                                            options.tail_fraction))}});
    log << fmt::format("simulate: {} steps, {} returns written to {}\n", config.steps,
                       output.returns.size(), options.out_dir);
    return 0;
  } catch (const BlowupError& e) {
    io::write_json(path_in(options.out_dir, "diagnostics.json"),
                   {{"config", to_json(config)}, {"diagnostics", io::to_json(e.diagnostics())}, {"error", e.what()}});
    log << "simulate: " << e.what() << "\n";
    return 1;
  }
}

namespace {

struct Accumulator {
  std::vector<double> values;

  json summary() const {
    const auto n = values.size();
    json out = {{"count", n}};
    if (n == 0) return out;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    out["mean"] = mean;
    if (n >= 2) {
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      out["std"] = sd;
      out["t_stat"] = sd > 0.0 ? json(mean / (sd / std::sqrt(static_cast<double>(n)))) : json(nullptr);
    }
    return out;
  }
};

}  // namespace

int cmd_ensemble(const EnsembleOptions& options, std::ostream& log) {
  RunConfig config = load_run_config(options.config);
  if (options.seed) config.seed = *options.seed;
  const auto results = run_ensemble(config, options.replications, options.threads);

  std::map<std::string, std::map<std::string, Accumulator>> acc;  // kind -> statistic -> values
  auto add = [&](const std::string& kind, const std::string& stat, double v) {
    if (std::isfinite(v)) acc[kind][stat].values.push_back(v);
  };
  json replications = json::array();
  std::size_t ok = 0;
  for (const auto& r : results) {
    json entry = {{"seed", r.seed}};
    if (!r.output) {
      entry["status"] = "failed";
      entry["error"] = r.error;
      if (r.partial) entry["diagnostics"] = io::to_json(*r.partial);
      replications.push_back(std::move(entry));
      continue;
    }
    ++ok;
    const auto& returns = r.output->returns;
    const auto absolute = absolute_returns(returns);
    entry["status"] = "ok";
    entry["diagnostics"] = io::to_json(r.output->diagnostics);
    for (const auto& [kind, series] : {std::pair{std::string("raw"), &returns}, std::pair{std::string("absolute"), &absolute}}) {
      const auto report = try_report(*series, options.lags, options.tail_fraction);
      entry[kind] = report_or_error(report);
      if (const auto* rep = std::get_if<stats::StatsReport>(&report)) {
        add(kind, "skew", rep->skew);
        add(kind, "excess_kurtosis", rep->excess_kurtosis);
        add(kind, "hill", rep->hill);
        for (const auto& [lag, v] : rep->acf_at_lags) add(kind, fmt::format("acf_{}", lag), v);
      }
    }
    try {
      const auto fit = stats::fit_power_decay(stats::acf_profile(absolute.values(), options.decay_max_lag));
      entry["abs_acf_decay"] = io::to_json(fit);
      add("absolute", "acf_decay_exponent", fit.exponent);
    } catch (const Error& e) {
      entry["abs_acf_decay"] = {{"error", e.what()}};
    }
    replications.push_back(std::move(entry));
  }

  json summary = json::object();
  std::string csv = "kind,statistic,count,mean,std,t_stat\n";
  for (const auto& [kind, stats_map] : acc) {
    for (const auto& [stat, a] : stats_map) {
      const auto s = a.summary();
      summary[kind][stat] = s;
      auto field = [&](const char* key) {
        return s.contains(key) && s[key].is_number() ? io::fixed5(s[key].get<double>()) : std::string();
      };
      csv += fmt::format("{},{},{},{},{},{}\n", kind, stat, a.values.size(), field("mean"), field("std"), field("t_stat"));
    }
  }
  io::write_json(path_in(options.out_dir, "ensemble.json"),
                 {{"config", to_json(config)},
                  {"replications_requested", options.replications},
                  {"replications_ok", ok},
                  {"replications", replications},
                  {"summary", summary}});
  io::write_text(path_in(options.out_dir, "ensemble.csv"), csv);
  log << fmt::format("ensemble: {}/{} replications completed\n", ok, results.size());
  return ok == 0 ? 1 : 0;
}

int cmd_figures(const FiguresOptions& options, std::ostream& log) {
  const int sources = static_cast<int>(options.input.has_value()) + static_cast<int>(options.returns_file.has_value()) +
                      static_cast<int>(options.config.has_value());
  if (sources != 1) {
    log << "figures: give exactly one of --input, --returns, --config\n";
    return 2;
  }
  Eigen::ArrayXd raw;
  std::string source;
  if (options.input) {
    CsvSpec spec;
    spec.price_column = options.price_column;
    raw = log_returns(read_prices(*options.input, spec, options.from, options.to).series).values();
    source = *options.input;
  } else if (options.returns_file) {
    raw = io::read_numeric_column(*options.returns_file, "return");
    source = *options.returns_file;
  } else {
    RunConfig config = load_run_config(*options.config);
    if (options.seed) config.seed = *options.seed;
    raw = run_simulation(config).returns.values();
    source = fmt::format("simulation {} seed {}", to_string(config.model), config.seed);
  }
  const Eigen::ArrayXd absolute = raw.abs();

  const auto histogram = stats::histogram_data(raw, options.bins);
  const auto qq = stats::qq_data(raw);
  const auto acf_raw = stats::acf_profile(raw, options.max_lag);
  const auto acf_abs = stats::acf_profile(absolute, options.max_lag);
  const auto tail = stats::tail_cdf_points(absolute);

  io::write_histogram_csv(path_in(options.out_dir, "histogram.csv"), histogram);
  io::write_qq_csv(path_in(options.out_dir, "qq.csv"), qq);
  io::write_acf_csv(path_in(options.out_dir, "acf.csv"), acf_raw, acf_abs);
  io::write_tail_cdf_csv(path_in(options.out_dir, "tail_cdf.csv"), tail);

  json summary = {{"source", source},
                  {"sample_size", raw.size()},
                  {"histogram", {{"bins", options.bins}, {"mean", histogram.mean}, {"stddev", histogram.stddev},
                                 {"bin_width", histogram.bin_width}}},
                  {"max_lag", options.max_lag}};
  try {
    summary["abs_acf_decay"] = io::to_json(stats::fit_power_decay(acf_abs));
  } catch (const Error& e) {
    summary["abs_acf_decay"] = {{"error", e.what()}};
  }
  try {
    // Top decile of |r|.
    std::vector<stats::TailPoint> top;
    const auto cutoff = static_cast<double>(0.1);
    for (const auto& p : tail) {
      if (p.ccdf < cutoff) top.push_back(p);
    }
    summary["tail_fit"] = io::to_json(stats::fit_power_decay(top));
  } catch (const Error& e) {
    summary["tail_fit"] = {{"error", e.what()}};
  }
  io::write_json(path_in(options.out_dir, "figures.json"), summary);
  log << fmt::format("figures: {} returns from {}\n", raw.size(), source);
  return 0;
}

}  // namespace abm::cli

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "abm/ingest.hpp"
#include "abm/stats.hpp"

// Subcommand implementations behind the `abm` CLI. Each returns the process exit code and
// writes its outputs under `out_dir`. Outputs contain no timestamps, so identical inputs
// give byte-identical files.
namespace abm::cli {

struct AnalyzeOptions {
  std::vector<std::string> inputs;
  std::optional<std::string> manifest;
  std::optional<Date> from;
  std::optional<Date> to;
  // Unset values fall back to the manifest's settings, then to the defaults.
  std::optional<std::vector<Eigen::Index>> lags;
  std::optional<double> tail_fraction;
  std::string price_column = "Open";
  std::string out_dir = ".";
  bool raw = true;
  bool absolute = true;
};

/// One table column: a (source, window, kind) triple and either its report or an error.
struct AnalysisColumn {
  std::string label;
  std::string source;
  std::optional<Date> from;
  std::optional<Date> to;
  ReturnKind kind = ReturnKind::raw;
  std::size_t rows_used = 0;
  std::size_t rows_skipped = 0;
  std::variant<stats::StatsReport, std::string> result;
};

struct Analysis {
  std::vector<Eigen::Index> lags;
  double tail_fraction = stats::kDefaultTailFraction;
  std::vector<AnalysisColumn> columns;
};

[[nodiscard]] Analysis analyze_columns(const AnalyzeOptions& options);

/// Writes table.csv and table.json. Exit code is nonzero iff every column failed.
int cmd_analyze(const AnalyzeOptions& options, std::ostream& log);

struct SimulateOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::vector<Eigen::Index> lags = stats::kDefaultLags;
  double tail_fraction = stats::kDefaultTailFraction;
};

/// Writes log_prices.csv, returns.csv, diagnostics.json and report.json.
int cmd_simulate(const SimulateOptions& options, std::ostream& log);

struct EnsembleOptions {
  std::string config;
  std::size_t replications = 20;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::string out_dir = ".";
  std::vector<Eigen::Index> lags = stats::kDefaultLags;
  double tail_fraction = stats::kDefaultTailFraction;
  Eigen::Index decay_max_lag = 100;
};

/// Writes ensemble.json (per-replication reports plus per-statistic mean, sample standard
/// deviation and t-statistic against zero) and ensemble.csv (the summary). Exit code is
/// nonzero iff every replication failed.
int cmd_ensemble(const EnsembleOptions& options, std::ostream& log);

struct FiguresOptions {
  std::optional<std::string> input;         // price file
  std::optional<std::string> returns_file;  // returns.csv written by `simulate`
  std::optional<std::string> config;        // run a fresh simulation
  std::optional<std::uint64_t> seed;
  std::optional<Date> from;
  std::optional<Date> to;
  std::string price_column = "Open";
  Eigen::Index max_lag = 100;
  Eigen::Index bins = stats::kDefaultHistogramBins;
  std::string out_dir = ".";
};

/// Writes histogram.csv, qq.csv, acf.csv, tail_cdf.csv and figures.json.
int cmd_figures(const FiguresOptions& options, std::ostream& log);

/// Parses "10,20,50,100".
[[nodiscard]] std::vector<Eigen::Index> parse_lags(const std::string& text);

}  // namespace abm::cli

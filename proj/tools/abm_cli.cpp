#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "abm/commands.hpp"
#include "abm/error.hpp"

namespace {

std::optional<abm::Date> date_flag(const std::string& text, const char* name) {
  if (text.empty()) return std::nullopt;
  const auto date = abm::parse_iso_date(text);
  if (!date) throw abm::Error(abm::ErrorKind::ConfigError, std::string(name) + ": expected YYYY-MM-DD, got '" + text + "'");
  return date;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based market simulator and stylized-facts toolkit"};
  app.require_subcommand(1);

  std::string from, to, lags_text, out_dir = ".";
  std::optional<double> tail_fraction;
  std::optional<std::uint64_t> seed;

  abm::cli::AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Statistics table for price files");
  analyze_cmd->add_option("--input", analyze.inputs, "Price CSV file (repeatable)");
  analyze_cmd->add_option("--manifest", analyze.manifest, "JSON manifest of sources and windows");
  analyze_cmd->add_option("--from", from, "Window start YYYY-MM-DD");
  analyze_cmd->add_option("--to", to, "Window end YYYY-MM-DD");
  analyze_cmd->add_option("--lags", lags_text, "Comma-separated ACF lags");
  analyze_cmd->add_option("--tail-fraction", tail_fraction, "Hill tail fraction")->check(CLI::Range(0.0, 1.0));
  analyze_cmd->add_option("--price-column", analyze.price_column, "Price column name");
  analyze_cmd->add_option("--out-dir", out_dir, "Output directory");
  bool raw_only = false, absolute_only = false;
  analyze_cmd->add_flag("--raw-only", raw_only, "Only raw-return columns");
  analyze_cmd->add_flag("--absolute-only", absolute_only, "Only absolute-return columns");

  abm::cli::SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run one simulation");
  simulate_cmd->add_option("--config", simulate.config, "Run config JSON")->required();
  simulate_cmd->add_option("--seed", seed, "Override the config seed");
  simulate_cmd->add_option("--out-dir", out_dir, "Output directory");
  simulate_cmd->add_option("--lags", lags_text, "Comma-separated ACF lags");
  simulate_cmd->add_option("--tail-fraction", tail_fraction, "Hill tail fraction")->check(CLI::Range(0.0, 1.0));

  abm::cli::EnsembleOptions ensemble;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "Run replications and aggregate statistics");
  ensemble_cmd->add_option("--config", ensemble.config, "Run config JSON")->required();
  ensemble_cmd->add_option("--replications", ensemble.replications, "Replication count")->check(CLI::PositiveNumber);
  ensemble_cmd->add_option("--threads", ensemble.threads, "Worker threads")->check(CLI::PositiveNumber);
  ensemble_cmd->add_option("--seed", seed, "Base seed; replication r uses seed + r");
  ensemble_cmd->add_option("--out-dir", out_dir, "Output directory");
  ensemble_cmd->add_option("--lags", lags_text, "Comma-separated ACF lags");
  ensemble_cmd->add_option("--tail-fraction", tail_fraction, "Hill tail fraction")->check(CLI::Range(0.0, 1.0));
  ensemble_cmd->add_option("--max-lag", ensemble.decay_max_lag, "Max lag for the abs-ACF decay fit");

  abm::cli::FiguresOptions figures;
  auto* figures_cmd = app.add_subcommand("figures", "Figure data: histogram, QQ, ACF, tail CDF");
  figures_cmd->add_option("--input", figures.input, "Price CSV file");
  figures_cmd->add_option("--returns", figures.returns_file, "returns.csv from simulate");
  figures_cmd->add_option("--config", figures.config, "Simulate with this config");
  figures_cmd->add_option("--seed", seed, "Override the config seed");
  figures_cmd->add_option("--from", from, "Window start YYYY-MM-DD");
  figures_cmd->add_option("--to", to, "Window end YYYY-MM-DD");
  figures_cmd->add_option("--price-column", figures.price_column, "Price column name");
  figures_cmd->add_option("--max-lag", figures.max_lag, "Max ACF lag");
  figures_cmd->add_option("--bins", figures.bins, "Histogram bins")->check(CLI::PositiveNumber);
  figures_cmd->add_option("--out-dir", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd) {
      analyze.from = date_flag(from, "--from");
      analyze.to = date_flag(to, "--to");
      if (!lags_text.empty()) analyze.lags = abm::cli::parse_lags(lags_text);
      analyze.tail_fraction = tail_fraction;
      analyze.out_dir = out_dir;
      analyze.raw = !absolute_only;
      analyze.absolute = !raw_only;
      return abm::cli::cmd_analyze(analyze, std::cerr);
    }
    if (*simulate_cmd) {
      simulate.seed = seed;
      simulate.out_dir = out_dir;
      if (!lags_text.empty()) simulate.lags = abm::cli::parse_lags(lags_text);
      if (tail_fraction) simulate.tail_fraction = *tail_fraction;
      return abm::cli::cmd_simulate(simulate, std::cerr);
    }
    if (*ensemble_cmd) {
      ensemble.seed = seed;
      ensemble.out_dir = out_dir;
      if (!lags_text.empty()) ensemble.lags = abm::cli::parse_lags(lags_text);
      if (tail_fraction) ensemble.tail_fraction = *tail_fraction;
      return abm::cli::cmd_ensemble(ensemble, std::cerr);
    }
    figures.seed = seed;
    figures.from = date_flag(from, "--from");
    figures.to = date_flag(to, "--to");
    figures.out_dir = out_dir;
    return abm::cli::cmd_figures(figures, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "abm/agents.hpp"
#include "abm/environment.hpp"
#include "abm/error.hpp"
#include "abm/market.hpp"
#include "abm/timeseries.hpp"

namespace abm {

enum class ModelKind { fw_two_agent, cross_herding, custom };

[[nodiscard]] std::string_view to_string(ModelKind model) noexcept;

/// Agent counts for the `custom` model: identical fundamentalists and chartists whose
/// demands are averaged into ED.
struct PopulationConfig {
  std::size_t fundamentalists = 1;
  std::size_t chartists = 0;
};

/// A complete simulation run description.
///
/// Per-step order: agent demands -> ED -> environment update -> price update -> record.
/// RNG draw order: herding initialisation (cross_herding only, per agent: sign, threshold,
/// band), then each step: the FW noise draw (fw_two_agent with noise_std > 0), then eta.
struct RunConfig {
  ModelKind model = ModelKind::cross_herding;
  std::int64_t steps = 100000;
  double dt = 0.01;
  std::uint64_t seed = 1;
  double initial_log_price = 0.0;
  std::int64_t burn_in = 10000;
  PriceRule price_rule;
  FundamentalistParams fundamentalist;
  ChartistParams chartist;
  FWParams fw;
  PopulationConfig population;
  HerdingInit herding;
  bool record_positions = false;

  /// Shipped defaults per model. They were tuned during development; they are not
  /// calibrated to market data.
  [[nodiscard]] static RunConfig defaults(ModelKind model);

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Parses a run-config document. Omitted fields take the model's defaults; `burn_in`
/// defaults to 10% of `steps`. Unknown keys are rejected.
[[nodiscard]] RunConfig parse_run_config(const nlohmann::json& document);
[[nodiscard]] RunConfig load_run_config(const std::string& path);
[[nodiscard]] nlohmann::json to_json(const RunConfig& config);

struct SimDiagnostics {
  std::uint64_t seed = 0;
  std::int64_t steps_completed = 0;
  std::size_t herding_switches = 0;
  std::size_t band_switches = 0;
  bool blowup = false;
  std::int64_t blowup_step = -1;
  double final_excess_demand = 0.0;
  double final_log_price = 0.0;
};

struct SimOutput {
  Eigen::ArrayXd log_prices;  // length steps + 1
  ReturnSeries returns;       // log-price differences after burn-in, length steps - burn_in
  SimDiagnostics diagnostics;
  /// Herding signs at every recorded time (initial + after each environment update),
  /// only when `record_positions` is set.
  std::vector<std::vector<std::int8_t>> positions;
};

/// Thrown when a run hits NumericalBlowup; carries the diagnostics up to the failing step.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& message, SimDiagnostics diagnostics)
      : Error(ErrorKind::NumericalBlowup, message), diagnostics_(diagnostics) {}
  [[nodiscard]] const SimDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  SimDiagnostics diagnostics_;
};

/// Runs one seeded simulation. The output is a deterministic function of `config`.
[[nodiscard]] SimOutput run_simulation(const RunConfig& config);

struct ReplicationResult {
  std::uint64_t seed = 0;
  std::optional<SimOutput> output;
  std::string error;  // set iff output is empty
  std::optional<SimDiagnostics> partial;  // set for blowups
};

/// Replication r runs with seed = config.seed + r. Failures are recorded per replication and do
/// not stop the others. Results are in replication order for any `threads` value.
[[nodiscard]] std::vector<ReplicationResult> run_ensemble(const RunConfig& config,
                                                          std::size_t replications,
                                                          std::size_t threads = 1);

}  // namespace abm

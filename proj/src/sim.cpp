#include "abm/sim.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "abm/rng.hpp"

namespace abm {

std::string_view to_string(ModelKind model) noexcept {
  switch (model) {
    case ModelKind::fw_two_agent: return "fw_two_agent";
    case ModelKind::cross_herding: return "cross_herding";
    case ModelKind::custom: return "custom";
  }
  return "unknown";
}

namespace {

void record_positions(const HerdingPopulation& population, std::vector<std::vector<std::int8_t>>& out) {
  std::vector<std::int8_t> row(static_cast<std::size_t>(population.size()));
  for (Eigen::Index i = 0; i < population.size(); ++i) {
    row[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(population.sigma()[i]);
  }
  out.push_back(std::move(row));
}

}  // namespace

SimOutput run_simulation(const RunConfig& config) {
  config.validate();
  Rng rng(config.seed);

  SimDiagnostics diag;
  diag.seed = config.seed;
  Eigen::ArrayXd log_prices(config.steps + 1);
  log_prices[0] = config.initial_log_price;
  std::vector<std::vector<std::int8_t>> positions;

  std::optional<HerdingPopulation> herd;
  if (config.model == ModelKind::cross_herding) {
    herd = make_herding_population(config.herding, config.initial_log_price, rng);
    if (config.record_positions) record_positions(*herd, positions);
  }

  const auto n_f = static_cast<Eigen::Index>(config.population.fundamentalists);
  const auto n_c = static_cast<Eigen::Index>(config.population.chartists);
  Eigen::ArrayXd demands(config.model == ModelKind::custom ? n_f + n_c : 0);

  MarketState state{config.initial_log_price, 0, config.dt};
  double previous = config.initial_log_price;  // P_{-1} = P_0
  for (std::int64_t k = 0; k < config.steps; ++k) {
    const double s = state.log_price;
    double ed = 0.0;
    switch (config.model) {
      case ModelKind::fw_two_agent: {
        const double ed_c = chartist_demand(config.fw.b.at(k), s, previous);
        const double ed_f =
            fundamentalist_demand(config.fw.a.at(k), config.fundamentalist.log_fundamental.at(k), s);
        const double noise = config.fw.noise_std > 0.0 ? rng.normal() : 0.0;
        ed = franke_westerhoff_ed(ed_c, ed_f, config.fw, noise);
        break;
      }
      case ModelKind::custom: {
        demands.head(n_f).setConstant(fundamentalist_demand(config.fundamentalist, s, k));
        demands.tail(n_c).setConstant(chartist_demand(config.chartist, s, previous));
        ed = aggregate_excess_demand(demands);
        break;
      }
      case ModelKind::cross_herding: {
        ed = population_excess_demand(*herd);
        const auto counts = environment_step(*herd, ed, config.dt, s);
        diag.herding_switches += counts.herding_switches;
        diag.band_switches += counts.band_switches;
        if (config.record_positions) record_positions(*herd, positions);
        break;
      }
    }
    const double eta = rng.normal();
    try {
      state = price_step(state, ed, config.price_rule, eta);
    } catch (const Error& e) {
      diag.blowup = true;
      diag.blowup_step = k + 1;
      diag.final_excess_demand = ed;
      diag.final_log_price = s;
      throw BlowupError(fmt::format("seed {}: {}", config.seed, e.detail()), diag);
    }
    previous = s;
    log_prices[k + 1] = state.log_price;
    diag.steps_completed = k + 1;
    diag.final_excess_demand = ed;
  }
  diag.final_log_price = state.log_price;

  const Eigen::Index kept = config.steps - config.burn_in;
  Eigen::ArrayXd returns = log_prices.tail(kept) - log_prices.segment(config.burn_in, kept);
  return SimOutput{std::move(log_prices),
                   ReturnSeries(std::move(returns), ReturnKind::raw,
                                fmt::format("{} seed {}", to_string(config.model), config.seed)),
                   diag, std::move(positions)};
}

std::vector<ReplicationResult> run_ensemble(const RunConfig& config, std::size_t replications,
                                            std::size_t threads) {
  if (replications < 1) {
    throw Error(ErrorKind::ConfigError, "replications: must be >= 1");
  }
  config.validate();
  std::vector<ReplicationResult> results(replications);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < replications; r = next++) {
      RunConfig replica = config;
      replica.seed = config.seed + r;
      auto& slot = results[r];
      slot.seed = replica.seed;
      try {
        slot.output = run_simulation(replica);
      } catch (const BlowupError& e) {
        slot.error = e.what();
        slot.partial = e.diagnostics();
      } catch (const Error& e) {
        slot.error = e.what();
      }
    }
  };
  const std::size_t pool = std::clamp<std::size_t>(threads, 1, replications);
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) workers.emplace_back(worker);
  }
  return results;
}

}  // namespace abm

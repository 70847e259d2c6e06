#include "abm/market.hpp"

#include <cmath>

#include <fmt/format.h>

#include "abm/error.hpp"

namespace abm {

void PriceRule::validate() const {
  if (!(gamma >= 0.0)) throw Error(ErrorKind::ConfigError, fmt::format("price_rule.gamma: must be >= 0, got {}", gamma));
  if (!(sigma0 >= 0.0)) throw Error(ErrorKind::ConfigError, fmt::format("price_rule.sigma0: must be >= 0, got {}", sigma0));
  if (!(delta >= 0.0)) throw Error(ErrorKind::ConfigError, fmt::format("price_rule.delta: must be >= 0, got {}", delta));
}

double PriceRule::drift_term(double log_price, double excess_demand, double dt) const {
  if (drift) return drift(log_price, excess_demand, dt);
  return gamma * dt * excess_demand;
}

double PriceRule::diffusion_term(double log_price, double excess_demand, double dt) const {
  if (diffusion) return diffusion(log_price, excess_demand, dt);
  return std::sqrt(dt) * (sigma0 + delta * std::abs(excess_demand));
}

double aggregate_excess_demand(const Eigen::Ref<const Eigen::ArrayXd>& demands) {
  if (demands.size() == 0) throw Error(ErrorKind::NoAgents, "aggregate excess demand of an empty population");
  return demands.mean();
}

MarketState price_step(const MarketState& state, double excess_demand, const PriceRule& rule,
                       double eta) {
  const double s = state.log_price;
  const double next = s + rule.drift_term(s, excess_demand, state.dt) +
                      rule.diffusion_term(s, excess_demand, state.dt) * eta;
  if (!std::isfinite(next) || std::abs(next) > kLogPriceLimit) {
    throw Error(ErrorKind::NumericalBlowup,
                fmt::format("log price {} at step {} (from {}, ED = {})", next, state.step_index + 1, s,
                            excess_demand));
  }
  return {next, state.step_index + 1, state.dt};
}

}  // namespace abm

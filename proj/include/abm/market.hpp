#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace abm {

/// Running state of the price process. `log_price` is S_k; the actual price is exp(S_k).
struct MarketState {
  double log_price = 0.0;
  std::int64_t step_index = 0;
  double dt = 1.0;
};

/// Price adjustment S' = S + F(S, ED) + G(S, ED) * eta.
///
/// Built-ins: F = gamma * dt * ED and G = sqrt(dt) * (sigma0 + delta * |ED|), so delta = 0
/// gives constant diffusion and sigma0 = 0 gives diffusion proportional to |ED|.
/// Setting `drift` or `diffusion` replaces the corresponding built-in with a pure function
/// of (log_price, excess_demand, dt).
struct PriceRule {
  double gamma = 0.0;
  double sigma0 = 0.0;
  double delta = 0.0;
  std::function<double(double, double, double)> drift;
  std::function<double(double, double, double)> diffusion;

  void validate() const;
  [[nodiscard]] double drift_term(double log_price, double excess_demand, double dt) const;
  [[nodiscard]] double diffusion_term(double log_price, double excess_demand, double dt) const;
};

/// |log price| beyond this aborts the run before exp() overflows.
inline constexpr double kLogPriceLimit = 700.0;

/// ED = (1/N) sum ed_i. Throws NoAgents for an empty list.
[[nodiscard]] double aggregate_excess_demand(const Eigen::Ref<const Eigen::ArrayXd>& demands);

/// One step of the disequilibrium price model. Deterministic in (state, ED, rule, eta).
/// Throws NumericalBlowup if the new log price is non-finite or exceeds kLogPriceLimit.
[[nodiscard]] MarketState price_step(const MarketState& state, double excess_demand,
                                     const PriceRule& rule, double eta);

}  // namespace abm

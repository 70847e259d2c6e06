#pragma once

#include <cstdint>
#include <vector>

namespace abm {

/// A value that is either constant or given per step. Steps past the end of a
/// per-step sequence are rejected at config validation.
struct Schedule {
  double constant = 0.0;
  std::vector<double> per_step;

  [[nodiscard]] double at(std::int64_t step) const {
    return per_step.empty() ? constant : per_step[static_cast<std::size_t>(step)];
  }
};

struct FundamentalistParams {
  double a = 1.0;
  Schedule log_fundamental;  // P^F in log-price units
};

struct ChartistParams {
  double b = 1.0;
};

/// Two-agent (chartist + fundamentalist) aggregation with time-dependent weights and an
/// additive Gaussian perturbation of ED.
struct FWParams {
  Schedule a{1.0, {}};
  Schedule b{1.0, {}};
  double noise_std = 0.0;
};

/// a * (P^F - P): buys below the fundamental value, sells above it.
[[nodiscard]] double fundamentalist_demand(double a, double log_fundamental, double log_price);
[[nodiscard]] double fundamentalist_demand(const FundamentalistParams& params, double log_price,
                                           std::int64_t step = 0);

/// b * (P_k - P_{k-1}).
[[nodiscard]] double chartist_demand(double b, double log_price_now, double log_price_prev);
[[nodiscard]] inline double chartist_demand(const ChartistParams& params, double log_price_now,
                                            double log_price_prev) {
  return chartist_demand(params.b, log_price_now, log_price_prev);
}

/// 0.5 * (ed_C + ed_F) + noise_std * noise_draw.
[[nodiscard]] double franke_westerhoff_ed(double chartist_ed, double fundamentalist_ed,
                                          const FWParams& params, double noise_draw);

}  // namespace abm

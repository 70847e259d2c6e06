#include "abm/agents.hpp"

namespace abm {

double fundamentalist_demand(double a, double log_fundamental, double log_price) {
  return a * (log_fundamental - log_price);
}

double fundamentalist_demand(const FundamentalistParams& params, double log_price, std::int64_t step) {
  return fundamentalist_demand(params.a, params.log_fundamental.at(step), log_price);
}

double chartist_demand(double b, double log_price_now, double log_price_prev) {
  return b * (log_price_now - log_price_prev);
}

double franke_westerhoff_ed(double chartist_ed, double fundamentalist_ed, const FWParams& params,
                            double noise_draw) {
  return 0.5 * (chartist_ed + fundamentalist_ed) + params.noise_std * noise_draw;
}

}  // namespace abm

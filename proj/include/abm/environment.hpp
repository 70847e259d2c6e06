#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace abm {

class Rng;

/// One agent of the herding environment, as a value record.
struct HerdingAgent {
  int sigma = 1;            // position sign, -1 or +1
  double pressure = 0.0;    // herding pressure c_i >= 0
  double threshold = 1.0;   // switching threshold alpha_i > 0
  double anchor = 0.0;      // log price at the agent's last switch
  double band = std::numeric_limits<double>::infinity();  // inaction half-width in log price
};

/// Herding population stored column-wise so a step is a handful of array expressions.
///
/// Each agent holds a position sign and accumulates herding pressure while it is on the
/// opposite side of the aggregate excess demand; reaching its threshold flips the sign and
/// resets the pressure. The optional inaction band flips an agent whose log price has left
/// [anchor - band, anchor + band] since its last switch. With band = +inf it is inert.
class HerdingPopulation {
 public:
  explicit HerdingPopulation(const std::vector<HerdingAgent>& agents);

  [[nodiscard]] Eigen::Index size() const noexcept { return sigma_.size(); }
  [[nodiscard]] HerdingAgent agent(Eigen::Index i) const;

  [[nodiscard]] const Eigen::ArrayXd& sigma() const noexcept { return sigma_; }
  [[nodiscard]] const Eigen::ArrayXd& pressure() const noexcept { return pressure_; }
  [[nodiscard]] const Eigen::ArrayXd& threshold() const noexcept { return threshold_; }
  [[nodiscard]] const Eigen::ArrayXd& anchor() const noexcept { return anchor_; }
  [[nodiscard]] const Eigen::ArrayXd& band() const noexcept { return band_; }

  /// Herding update with a fixed ED (synchronous); returns the number of switches.
  std::size_t apply_herding(double excess_demand, double dt);

  /// Flips agents outside their inaction band and re-anchors them; returns the number of switches.
  std::size_t apply_inaction_band(double log_price);

  /// Sets anchor = log_price for every agent whose sign differs from `previous_sigma`.
  void reanchor_switched(const Eigen::ArrayXd& previous_sigma, double log_price);

  /// Exact (bitwise-valued) equality of every agent field.
  friend bool operator==(const HerdingPopulation& lhs, const HerdingPopulation& rhs) {
    return lhs.size() == rhs.size() && (lhs.sigma_ == rhs.sigma_).all() &&
           (lhs.pressure_ == rhs.pressure_).all() && (lhs.threshold_ == rhs.threshold_).all() &&
           (lhs.anchor_ == rhs.anchor_).all() && (lhs.band_ == rhs.band_).all();
  }

 private:
  Eigen::ArrayXd sigma_;
  Eigen::ArrayXd pressure_;
  Eigen::ArrayXd threshold_;
  Eigen::ArrayXd anchor_;
  Eigen::ArrayXd band_;
};

struct HerdingInit {
  std::size_t agents = 1000;
  double threshold_min = 1.0;
  double threshold_max = 2.0;
  bool band_enabled = true;
  double band_min = 0.1;
  double band_max = 0.5;
};

/// sigma_i uniform on {-1, +1}, alpha_i ~ U[threshold_min, threshold_max], c_i = 0,
/// band_i ~ U[band_min, band_max] when enabled, anchor_i = initial log price.
/// Draws per agent, in order: sign, threshold, band (if enabled).
[[nodiscard]] HerdingPopulation make_herding_population(const HerdingInit& init,
                                                        double initial_log_price, Rng& rng);

/// ED = (1/N) sum sigma_i, in [-1, 1]. Throws NoAgents for an empty population.
[[nodiscard]] double population_excess_demand(const HerdingPopulation& population);

/// For each agent with sigma_i * ED < 0: c_i += dt |ED|, then flip and reset if c_i >= alpha_i.
/// Agents with sigma_i * ED >= 0 are unchanged.
[[nodiscard]] HerdingPopulation herding_step(const HerdingPopulation& population,
                                             double excess_demand, double dt);

struct EnvironmentCounts {
  std::size_t herding_switches = 0;
  std::size_t band_switches = 0;
};

/// Full environment step at log price S: herding, re-anchoring of agents that just switched,
/// then the inaction band.
EnvironmentCounts environment_step(HerdingPopulation& population, double excess_demand, double dt,
                                   double log_price);

}  // namespace abm

#include "abm/environment.hpp"

#include <cmath>

#include <fmt/format.h>

#include "abm/error.hpp"
#include "abm/rng.hpp"

namespace abm {

HerdingPopulation::HerdingPopulation(const std::vector<HerdingAgent>& agents) {
  if (agents.empty()) throw Error(ErrorKind::NoAgents, "herding population must be non-empty");
  const auto n = static_cast<Eigen::Index>(agents.size());
  sigma_.resize(n);
  pressure_.resize(n);
  threshold_.resize(n);
  anchor_.resize(n);
  band_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& a = agents[static_cast<std::size_t>(i)];
    if (a.sigma != 1 && a.sigma != -1) {
      throw Error(ErrorKind::ConfigError, fmt::format("agent {}: sigma must be +1 or -1, got {}", i, a.sigma));
    }
    if (!(a.pressure >= 0.0)) {
      throw Error(ErrorKind::ConfigError, fmt::format("agent {}: pressure must be >= 0", i));
    }
    if (!(a.threshold > 0.0)) {
      throw Error(ErrorKind::ConfigError, fmt::format("agent {}: threshold must be > 0", i));
    }
    if (!(a.band > 0.0)) {
      throw Error(ErrorKind::ConfigError, fmt::format("agent {}: inaction band must be > 0", i));
    }
    sigma_[i] = a.sigma;
    pressure_[i] = a.pressure;
    threshold_[i] = a.threshold;
    anchor_[i] = a.anchor;
    band_[i] = a.band;
  }
}

HerdingAgent HerdingPopulation::agent(Eigen::Index i) const {
  return {static_cast<int>(sigma_[i]), pressure_[i], threshold_[i], anchor_[i], band_[i]};
}

std::size_t HerdingPopulation::apply_herding(double excess_demand, double dt) {
  const auto minority = (sigma_ * excess_demand < 0.0).eval();
  pressure_ = minority.select(pressure_ + dt * std::abs(excess_demand), pressure_);
  const auto flip = (minority && pressure_ >= threshold_).eval();
  sigma_ = flip.select(-sigma_, sigma_);
  pressure_ = flip.select(0.0, pressure_);
  return static_cast<std::size_t>(flip.count());
}

std::size_t HerdingPopulation::apply_inaction_band(double log_price) {
  const auto flip = ((log_price - anchor_).abs() > band_).eval();
  sigma_ = flip.select(-sigma_, sigma_);
  pressure_ = flip.select(0.0, pressure_);
  anchor_ = flip.select(log_price, anchor_);
  return static_cast<std::size_t>(flip.count());
}

void HerdingPopulation::reanchor_switched(const Eigen::ArrayXd& previous_sigma, double log_price) {
  anchor_ = (sigma_ != previous_sigma).select(log_price, anchor_);
}

HerdingPopulation make_herding_population(const HerdingInit& init, double initial_log_price, Rng& rng) {
  std::vector<HerdingAgent> agents(init.agents);
  for (auto& a : agents) {
    a.sigma = rng.sign();
    a.threshold = rng.uniform(init.threshold_min, init.threshold_max);
    a.anchor = initial_log_price;
    if (init.band_enabled) a.band = rng.uniform(init.band_min, init.band_max);
  }
  return HerdingPopulation(agents);
}

double population_excess_demand(const HerdingPopulation& population) {
  if (population.size() == 0) throw Error(ErrorKind::NoAgents, "empty herding population");
  return population.sigma().mean();
}

HerdingPopulation herding_step(const HerdingPopulation& population, double excess_demand, double dt) {
  HerdingPopulation next = population;
  next.apply_herding(excess_demand, dt);
  return next;
}

EnvironmentCounts environment_step(HerdingPopulation& population, double excess_demand, double dt,
                                   double log_price) {
  EnvironmentCounts counts;
  const Eigen::ArrayXd before = population.sigma();
  counts.herding_switches = population.apply_herding(excess_demand, dt);
  if (counts.herding_switches > 0) population.reanchor_switched(before, log_price);
  counts.band_switches = population.apply_inaction_band(log_price);
  return counts;
}

}  // namespace abm

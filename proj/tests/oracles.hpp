#pragma once

// Independent reference implementations used by the unit and acceptance tests.
// They share no code with the library: plain loops over std::vector, 50-digit
// arithmetic where rounding matters, a full sort for order statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

inline std::vector<double> log_returns(const std::vector<double>& prices) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    const Big r = boost::multiprecision::log(Big(prices[i + 1])) - boost::multiprecision::log(Big(prices[i]));
    out.push_back(static_cast<double>(r));
  }
  return out;
}

struct Moments {
  double mean;
  double variance;
  double skew;
  double excess_kurtosis;
};

// Two-pass central moments in 50-digit arithmetic.
inline Moments moments(const std::vector<double>& x) {
  const Big n(x.size());
  Big sum = 0;
  for (double v : x) sum += v;
  const Big mean = sum / n;
  Big m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const Big d = Big(v) - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const Big sd = boost::multiprecision::sqrt(m2);
  return {static_cast<double>(mean), static_cast<double>(m2), static_cast<double>(m3 / (sd * sd * sd)),
          static_cast<double>(m4 / (m2 * m2) - 3)};
}

// Double loop over all pairs (i, j) with j - i == lag.
inline double acf(const std::vector<double>& x, std::size_t lag) {
  const std::size_t n = x.size();
  Big sum = 0;
  for (double v : x) sum += v;
  const Big mean = sum / Big(n);
  Big num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    den += (Big(x[i]) - mean) * (Big(x[i]) - mean);
    for (std::size_t j = i; j < n; ++j) {
      if (j - i == lag) num += (Big(x[i]) - mean) * (Big(x[j]) - mean);
    }
  }
  return static_cast<double>(num / den);
}

inline double hill(const std::vector<double>& sample, double tail_fraction) {
  std::vector<double> pos;
  for (double v : sample) {
    if (v > 0) pos.push_back(v);
  }
  std::sort(pos.begin(), pos.end());
  std::reverse(pos.begin(), pos.end());
  std::size_t k = 0;
  while (static_cast<double>(k + 1) <= tail_fraction * static_cast<double>(pos.size()) + 1e-9) ++k;
  Big sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += boost::multiprecision::log(Big(pos[i]) / Big(pos[k]));
  return static_cast<double>(Big(k) / sum);
}

// x = x_min * U^(-1/mu): P(X > x) = (x / x_min)^-mu.
inline std::vector<double> pareto(std::size_t n, double mu, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = std::pow(1.0 - u(gen), -1.0 / mu);
  return out;
}

inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = z(gen);
  return out;
}

// Stationary AR(1): x_0 drawn from the stationary law N(0, 1 / (1 - phi^2)).
inline std::vector<double> ar1(std::size_t n, double phi, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> out(n);
  out[0] = z(gen) / std::sqrt(1.0 - phi * phi);
  for (std::size_t i = 1; i < n; ++i) out[i] = phi * out[i - 1] + z(gen);
  return out;
}

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace oracle

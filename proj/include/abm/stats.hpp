#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <fmt/format.h>

#include "abm/error.hpp"
#include "abm/timeseries.hpp"

// Stylized-fact estimators. Moment estimators use population (1/n) normalisation.
// The scalar templates accept any Eigen dense expression, so e.g.
// `skewness(r.abs())` or `autocorrelation(x.segment(a, n), 10)` work without copies.
namespace abm::stats {

template <typename Scalar>
struct MeanVar {
  Scalar mean;
  Scalar variance;
};

template <typename Derived>
[[nodiscard]] MeanVar<typename Derived::Scalar> mean_var(const Eigen::DenseBase<Derived>& sample) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = sample.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData, fmt::format("mean/variance need n >= 2, got {}", n));
  }
  const auto& x = sample.derived().array();
  const Scalar mean = x.sum() / static_cast<Scalar>(n);
  const Scalar variance = (x - mean).square().sum() / static_cast<Scalar>(n);
  return {mean, variance};
}

namespace detail {

// Variance at rounding level for the sample's magnitude: a constant series whose mean is not
// exactly representable leaves residues of a few ulps, which must not count as variation.
template <typename Scalar>
bool negligible_variance(Scalar variance, Scalar max_abs) {
  const Scalar floor = Scalar(16) * std::numeric_limits<Scalar>::epsilon() * max_abs;
  return !(variance > floor * floor);
}

// Returns the k-th central moment normalised by variance^(k/2).
template <typename Derived>
typename Derived::Scalar standardized_moment(const Eigen::DenseBase<Derived>& sample, int order,
                                             Eigen::Index min_n, const char* name) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = sample.size();
  if (n < min_n) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("{} needs n >= {}, got {}", name, min_n, n));
  }
  const auto [mean, variance] = mean_var(sample);
  if (detail::negligible_variance(variance, Scalar(sample.derived().array().abs().maxCoeff()))) {
    throw Error(ErrorKind::DegenerateSample, fmt::format("{} of a zero-variance sample", name));
  }
  const auto centered = (sample.derived().array() - mean).eval();
  const Scalar moment =
      (order == 3 ? centered.cube().sum() : centered.square().square().sum()) /
      static_cast<Scalar>(n);
  using std::pow;
  return moment / pow(variance, Scalar(order) / Scalar(2));
}

}  // namespace detail

/// m3 / sigma^3.
template <typename Derived>
[[nodiscard]] typename Derived::Scalar skewness(const Eigen::DenseBase<Derived>& sample) {
  return detail::standardized_moment(sample, 3, 3, "skewness");
}

/// m4 / sigma^4 - 3; zero for a Gaussian.
template <typename Derived>
[[nodiscard]] typename Derived::Scalar excess_kurtosis(const Eigen::DenseBase<Derived>& sample) {
  using Scalar = typename Derived::Scalar;
  return detail::standardized_moment(sample, 4, 4, "excess kurtosis") - Scalar(3);
}

/// Number of order statistics used by the Hill estimator for `positive_count` positives.
[[nodiscard]] inline Eigen::Index hill_tail_size(Eigen::Index positive_count, double tail_fraction) {
  // The 1e-9 guard keeps e.g. 0.05 * 60 from flooring to 2.
  return static_cast<Eigen::Index>(
      std::floor(tail_fraction * static_cast<double>(positive_count) + 1e-9));
}

/// Hill tail-exponent estimate over the strictly positive entries of `sample`:
/// H = ((1/k) sum_{i<=k} ln(x_(i) / x_(k+1)))^-1 with x_(1) >= x_(2) >= ... and
/// k = floor(tail_fraction * n+).
template <typename Derived>
[[nodiscard]] typename Derived::Scalar hill_estimator(const Eigen::DenseBase<Derived>& sample,
                                                      double tail_fraction = 0.05) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> positives;
  positives.reserve(static_cast<std::size_t>(sample.size()));
  for (Eigen::Index i = 0; i < sample.size(); ++i) {
    const Scalar v = sample.derived().array()(i);
    if (v > Scalar(0)) positives.push_back(v);
  }
  const auto n_pos = static_cast<Eigen::Index>(positives.size());
  const Eigen::Index k = hill_tail_size(n_pos, tail_fraction);
  if (k < 1 || k + 1 > n_pos) {
    throw Error(ErrorKind::InsufficientTail,
                fmt::format("k = floor({} * {}) = {} order statistics, need 1 <= k < n+", tail_fraction,
                            n_pos, k));
  }
  const auto top = positives.begin() + (k + 1);
  std::partial_sort(positives.begin(), top, positives.end(), std::greater<>{});
  const Scalar threshold = positives[static_cast<std::size_t>(k)];
  Scalar sum(0);
  using std::log;
  for (Eigen::Index i = 0; i < k; ++i) sum += log(positives[static_cast<std::size_t>(i)] / threshold);
  if (!(sum > Scalar(0))) {
    throw Error(ErrorKind::DegenerateTail, "top-k order statistics all equal the threshold");
  }
  return static_cast<Scalar>(k) / sum;
}

/// Sample autocorrelation at `lag` with the full-sample mean and full-sample denominator.
template <typename Derived>
[[nodiscard]] typename Derived::Scalar autocorrelation(const Eigen::DenseBase<Derived>& series,
                                                       Eigen::Index lag) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = series.size();
  if (lag < 1) throw Error(ErrorKind::LagTooLarge, fmt::format("lag must be >= 1, got {}", lag));
  if (n - lag < 2) {
    throw Error(ErrorKind::LagTooLarge, fmt::format("lag {} leaves fewer than 2 pairs in n = {}", lag, n));
  }
  const auto& x = series.derived().array();
  const Scalar mean = x.sum() / static_cast<Scalar>(n);
  const auto d = (x - mean).eval();
  const Scalar denom = d.square().sum();
  if (detail::negligible_variance(Scalar(denom / static_cast<Scalar>(n)), Scalar(x.abs().maxCoeff()))) {
    throw Error(ErrorKind::DegenerateSample, "autocorrelation of a zero-variance series");
  }
  return (d.tail(n - lag) * d.head(n - lag)).sum() / denom;
}

struct AcfProfile {
  std::vector<Eigen::Index> lags;
  Eigen::ArrayXd values;
};

/// Autocorrelation at lags 1..max_lag.
[[nodiscard]] AcfProfile acf_profile(const Eigen::Ref<const Eigen::ArrayXd>& series,
                                     Eigen::Index max_lag);

struct TailPoint {
  double value;
  double ccdf;  // fraction of the sample strictly above `value`
};

/// Empirical complementary CDF at each distinct sample value, ascending.
[[nodiscard]] std::vector<TailPoint> tail_cdf_points(const Eigen::Ref<const Eigen::ArrayXd>& sample);

struct TailFit {
  double exponent;
  double intercept;
  double fit_residual;  // RMS residual of the log-log regression
  Eigen::Index points_used;
};

/// OLS of ln(value) on ln(abscissa) over pairs where both are > 0; exponent = -slope.
[[nodiscard]] TailFit fit_power_decay(const Eigen::Ref<const Eigen::ArrayXd>& abscissa,
                                      const Eigen::Ref<const Eigen::ArrayXd>& values);
[[nodiscard]] TailFit fit_power_decay(const AcfProfile& profile);
[[nodiscard]] TailFit fit_power_decay(const std::vector<TailPoint>& points);

struct Histogram {
  Eigen::ArrayXd lower;
  Eigen::ArrayXd upper;
  Eigen::ArrayXd centers;
  std::vector<std::size_t> counts;
  Eigen::ArrayXd frequency;       // counts / n
  Eigen::ArrayXd fitted_density;  // Normal(mean, variance) pdf at centers
  Eigen::ArrayXd fitted_frequency;  // fitted_density * bin width
  double mean;
  double stddev;
  double bin_width;
  std::size_t sample_size;
};

inline constexpr Eigen::Index kDefaultHistogramBins = 200;

/// Equal-width bins over [min, max]; the last bin is closed on the right.
[[nodiscard]] Histogram histogram_data(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                       Eigen::Index bin_count = kDefaultHistogramBins);

struct QqPoint {
  double standard_quantile;     // Phi^-1((i - 0.5) / n)
  double theoretical_quantile;  // mean + sigma * standard_quantile
  double empirical_quantile;    // i-th smallest sample value
};

[[nodiscard]] std::vector<QqPoint> qq_data(const Eigen::Ref<const Eigen::ArrayXd>& sample);

/// Standard normal inverse CDF (Wichura's AS241, ~1e-16 relative accuracy). p must be in (0, 1).
[[nodiscard]] double normal_quantile(double p);
[[nodiscard]] double normal_pdf(double x, double mean = 0.0, double stddev = 1.0);

inline const std::vector<Eigen::Index> kDefaultLags{10, 20, 50, 100};
inline constexpr double kDefaultTailFraction = 0.05;

struct StatsReport {
  double skew;
  double excess_kurtosis;
  double hill;
  std::map<Eigen::Index, double> acf_at_lags;
  std::size_t sample_size;
  ReturnKind kind;
  double tail_fraction;
};

/// Assembles the table row set: skew, excess kurtosis, Hill, autocorrelation at each lag.
/// Member failures are rethrown with the failing statistic named.
[[nodiscard]] StatsReport full_report(const ReturnSeries& returns,
                                      const std::vector<Eigen::Index>& lags = kDefaultLags,
                                      double tail_fraction = kDefaultTailFraction);

/// 3 / sqrt(n): the white-noise band used for ACF significance.
[[nodiscard]] inline double white_noise_band(std::size_t n) {
  return 3.0 / std::sqrt(static_cast<double>(n));
}

}  // namespace abm::stats

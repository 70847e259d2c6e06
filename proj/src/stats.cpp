#include "abm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace abm::stats {

AcfProfile acf_profile(const Eigen::Ref<const Eigen::ArrayXd>& series, Eigen::Index max_lag) {
  const Eigen::Index n = series.size();
  if (max_lag < 1 || max_lag >= n - 1) {
    throw Error(ErrorKind::LagTooLarge,
                fmt::format("max lag {} must be in [1, n - 2] for n = {}", max_lag, n));
  }
  const double mean = series.mean();
  const Eigen::ArrayXd d = series - mean;
  const double denom = d.square().sum();
  if (detail::negligible_variance(denom / static_cast<double>(n), series.abs().maxCoeff())) {
    throw Error(ErrorKind::DegenerateSample, "autocorrelation of a zero-variance series");
  }
  AcfProfile profile;
  profile.lags.resize(static_cast<std::size_t>(max_lag));
  profile.values.resize(max_lag);
  for (Eigen::Index lag = 1; lag <= max_lag; ++lag) {
    profile.lags[static_cast<std::size_t>(lag - 1)] = lag;
    profile.values[lag - 1] = (d.tail(n - lag) * d.head(n - lag)).sum() / denom;
  }
  return profile;
}

std::vector<TailPoint> tail_cdf_points(const Eigen::Ref<const Eigen::ArrayXd>& sample) {
  const Eigen::Index n = sample.size();
  if (n < 1) throw Error(ErrorKind::InsufficientData, "tail CDF of an empty sample");
  std::vector<double> sorted(sample.data(), sample.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<TailPoint> points;
  const auto total = static_cast<double>(n);
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    points.push_back({sorted[i], static_cast<double>(sorted.size() - (j + 1)) / total});
    i = j + 1;
  }
  return points;
}

TailFit fit_power_decay(const Eigen::Ref<const Eigen::ArrayXd>& abscissa,
                        const Eigen::Ref<const Eigen::ArrayXd>& values) {
  if (abscissa.size() != values.size()) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("{} abscissae for {} values", abscissa.size(), values.size()));
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (abscissa[i] > 0.0 && values[i] > 0.0 && std::isfinite(values[i])) keep.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(keep.size());
  if (m < 5) {
    throw Error(ErrorKind::InsufficientPositivePoints,
                fmt::format("power-law fit needs >= 5 positive points, got {}", m));
  }
  Eigen::MatrixXd design(m, 2);
  Eigen::VectorXd target(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto i = keep[static_cast<std::size_t>(r)];
    design(r, 0) = 1.0;
    design(r, 1) = std::log(abscissa[i]);
    target(r) = std::log(values[i]);
  }
  const auto qr = design.colPivHouseholderQr();
  if (qr.rank() < 2) {
    throw Error(ErrorKind::DegenerateFit, "abscissae are all equal");
  }
  const Eigen::Vector2d coef = qr.solve(target);
  const Eigen::VectorXd residual = target - design * coef;
  TailFit fit{-coef(1), coef(0), std::sqrt(residual.squaredNorm() / static_cast<double>(m)), m};
  if (!(fit.exponent > 0.0) || !std::isfinite(fit.exponent)) {
    throw Error(ErrorKind::DegenerateFit,
                fmt::format("fitted exponent {} is not positive (no decay)", fit.exponent));
  }
  return fit;
}

TailFit fit_power_decay(const AcfProfile& profile) {
  Eigen::ArrayXd lags(static_cast<Eigen::Index>(profile.lags.size()));
  for (std::size_t i = 0; i < profile.lags.size(); ++i) {
    lags[static_cast<Eigen::Index>(i)] = static_cast<double>(profile.lags[i]);
  }
  return fit_power_decay(lags, profile.values);
}

TailFit fit_power_decay(const std::vector<TailPoint>& points) {
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::ArrayXd x(m), y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    x[i] = points[static_cast<std::size_t>(i)].value;
    y[i] = points[static_cast<std::size_t>(i)].ccdf;
  }
  return fit_power_decay(x, y);
}

Histogram histogram_data(const Eigen::Ref<const Eigen::ArrayXd>& sample, Eigen::Index bin_count) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw Error(ErrorKind::InsufficientData, fmt::format("histogram needs n >= 2, got {}", n));
  if (bin_count < 1) {
    throw Error(ErrorKind::InsufficientData, fmt::format("bin count must be >= 1, got {}", bin_count));
  }
  const double lo = sample.minCoeff();
  const double hi = sample.maxCoeff();
  if (!(hi > lo)) throw Error(ErrorKind::DegenerateSample, "histogram range is empty (min == max)");

  const auto [mean, variance] = mean_var(sample);
  Histogram h;
  h.mean = mean;
  h.stddev = std::sqrt(variance);
  h.bin_width = (hi - lo) / static_cast<double>(bin_count);
  h.sample_size = static_cast<std::size_t>(n);
  h.counts.assign(static_cast<std::size_t>(bin_count), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto bin = static_cast<Eigen::Index>(std::floor((sample[i] - lo) / h.bin_width));
    bin = std::clamp<Eigen::Index>(bin, 0, bin_count - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  h.lower = Eigen::ArrayXd::LinSpaced(bin_count, 0.0, static_cast<double>(bin_count - 1)) * h.bin_width + lo;
  h.upper = h.lower + h.bin_width;
  h.upper[bin_count - 1] = hi;
  h.centers = h.lower + 0.5 * h.bin_width;
  h.frequency.resize(bin_count);
  h.fitted_density.resize(bin_count);
  for (Eigen::Index b = 0; b < bin_count; ++b) {
    h.frequency[b] = static_cast<double>(h.counts[static_cast<std::size_t>(b)]) / static_cast<double>(n);
    h.fitted_density[b] = normal_pdf(h.centers[b], h.mean, h.stddev);
  }
  h.fitted_frequency = h.fitted_density * h.bin_width;
  return h;
}

std::vector<QqPoint> qq_data(const Eigen::Ref<const Eigen::ArrayXd>& sample) {
  const Eigen::Index n = sample.size();
  if (n < 2) throw Error(ErrorKind::InsufficientData, fmt::format("qq plot needs n >= 2, got {}", n));
  const auto [mean, variance] = mean_var(sample);
  if (detail::negligible_variance(variance, sample.abs().maxCoeff())) {
    throw Error(ErrorKind::DegenerateSample, "qq plot of a zero-variance sample");
  }
  const double sigma = std::sqrt(variance);
  std::vector<double> sorted(sample.data(), sample.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<QqPoint> points(sorted.size());
  const auto total = static_cast<double>(n);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double z = normal_quantile((static_cast<double>(i) + 0.5) / total);
    points[i] = {z, mean + sigma * z, sorted[i]};
  }
  return points;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::InsufficientData, fmt::format("normal quantile needs p in (0, 1), got {}", p));
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = std::sqrt(-std::log(q < 0.0 ? p : 1.0 - p));
  double value = 0.0;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((r * 7.7454501427834140764e-4 + .0227238449892691845833) * r + .24178072517745061177) * r +
                 1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
              4.6303378461565452959) * r + 1.42343711074968357734) /
            (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + .0151986665636164571966) * r +
                 .14810397642748007459) * r + .68976733498510000455) * r + 1.6763848301838038494) * r +
              2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + .0012426609473880784386) * r +
                 .026532189526576123093) * r + .29656057182850489123) * r + 1.7848265399172913358) * r +
              5.4637849111641143699) * r + 6.6579046435011037772) /
            (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                 7.868691311456132591e-4) * r + .0148753612908506148525) * r + .13692988092273580531) * r +
              .59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double normal_pdf(double x, double mean, double stddev) {
  const double z = (x - mean) / stddev;
  return std::exp(-0.5 * z * z) / (stddev * std::sqrt(2.0 * std::numbers::pi));
}

namespace {

template <typename F>
auto labeled(const char* statistic, F&& compute) {
  try {
    return compute();
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", statistic, e.detail()));
  }
}

}  // namespace

StatsReport full_report(const ReturnSeries& returns, const std::vector<Eigen::Index>& lags,
                        double tail_fraction) {
  const Eigen::ArrayXd& x = returns.values();
  if (x.size() < 1) throw Error(ErrorKind::InsufficientData, "empty return series");
  StatsReport report{};
  report.kind = returns.kind();
  report.sample_size = static_cast<std::size_t>(x.size());
  report.tail_fraction = tail_fraction;
  report.skew = labeled("skew", [&] { return skewness(x); });
  report.excess_kurtosis = labeled("excess kurtosis", [&] { return excess_kurtosis(x); });
  report.hill = labeled("hill", [&] { return hill_estimator(x, tail_fraction); });
  for (const auto lag : lags) {
    report.acf_at_lags[lag] =
        labeled("autocorrelation", [&] { return autocorrelation(x, lag); });
  }
  return report;
}

}  // namespace abm::stats

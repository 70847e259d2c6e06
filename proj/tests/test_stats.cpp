#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/normal.hpp>
#include <doctest.h>

#include "abm/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace abm;
using namespace abm::stats;
using support::array;
using support::error_kind;

namespace {

Eigen::ArrayXd alternating(Eigen::Index n) {
  Eigen::ArrayXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
  return x;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("mean and variance") {
    const auto a = mean_var(array({1, 1, 1}));
    CHECK(a.mean == 1.0);
    CHECK(a.variance == 0.0);
    const auto b = mean_var(array({-1, 1}));
    CHECK(b.mean == 0.0);
    CHECK(b.variance == 1.0);
    CHECK(error_kind([] { (void)mean_var(array({1})); }) == ErrorKind::InsufficientData);

    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    std::vector<double> x(10000);
    for (auto& v : x) v = u(gen) + 5e3;
    const auto got = mean_var(array(x));
    const auto want = oracle::moments(x);
    CHECK(oracle::rel_err(got.mean, want.mean) < 1e-12);
    CHECK(oracle::rel_err(got.variance, want.variance) < 1e-12);
  }

  TEST_CASE("skewness") {
    CHECK(skewness(array({-1, 0, 1})) == 0.0);
    CHECK(skewness(array({-1, 1, -1, 1})) == 0.0);
    CHECK(error_kind([] { (void)skewness(array({2, 2, 2, 2})); }) == ErrorKind::DegenerateSample);
    CHECK(error_kind([] { (void)skewness(array({1, 2})); }) == ErrorKind::InsufficientData);
  }

  TEST_CASE("excess kurtosis") {
    CHECK(excess_kurtosis(array({-1, 1, -1, 1})) == doctest::Approx(-2.0).epsilon(1e-15));
    const auto g = oracle::gaussian(1'000'000, 12);
    CHECK(std::abs(excess_kurtosis(array(g))) < 0.05);
  }

  TEST_CASE("moments work on expressions and other scalar types") {
    const Eigen::ArrayXd x = array({0.1, -0.4, 0.3, 0.9, -0.2});
    CHECK(skewness(x.abs()) == doctest::Approx(skewness(Eigen::ArrayXd(x.abs()))));
    const Eigen::ArrayXf xf = x.cast<float>();
    CHECK(excess_kurtosis(xf) == doctest::Approx(excess_kurtosis(x)).epsilon(1e-5));
  }

  TEST_CASE("moments are affine invariant") {
    const auto g = oracle::gaussian(5000, 13);
    const Eigen::ArrayXd x = array(g).exp();
    const Eigen::ArrayXd y = 3.5 * x + 17.0;
    CHECK(skewness(y) == doctest::Approx(skewness(x)).epsilon(1e-10));
    CHECK(excess_kurtosis(y) == doctest::Approx(excess_kurtosis(x)).epsilon(1e-10));
    CHECK(autocorrelation(y, 3) == doctest::Approx(autocorrelation(x, 3)).epsilon(1e-10));
  }

  TEST_CASE("hill estimator on an exact-log grid") {
    std::vector<double> x{std::exp(3.0), std::exp(2.0), std::exp(1.0), 1.0};
    for (int i = 0; i < 56; ++i) x.push_back(0.01 + 0.98 * i / 56.0);
    CHECK(hill_tail_size(60, 0.05) == 3);
    CHECK(hill_estimator(array(x)) == doctest::Approx(0.5).epsilon(1e-14));
    // Negative and zero entries are ignored.
    x.insert(x.end(), {-5.0, 0.0, -100.0});
    CHECK(hill_estimator(array(x)) == doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("hill estimator on Pareto samples") {
    const auto p = oracle::pareto(100'000, 2.5, 14);
    const double h = hill_estimator(array(p));
    CHECK(h >= 2.3);
    CHECK(h <= 2.7);
  }

  TEST_CASE("hill estimator is scale invariant") {
    const auto p = oracle::pareto(2000, 3.0, 15);
    const double base = hill_estimator(array(p));
    for (double c : {1e-4, 0.5, 123.0}) {
      CHECK(hill_estimator(Eigen::ArrayXd(array(p) * c)) == doctest::Approx(base).epsilon(1e-10));
    }
  }

  TEST_CASE("hill estimator errors") {
    CHECK(error_kind([] { (void)hill_estimator(array({1, 2, 3})); }) == ErrorKind::InsufficientTail);
    CHECK(error_kind([] { (void)hill_estimator(array({-1, -2})); }) == ErrorKind::InsufficientTail);
    CHECK(error_kind([] { (void)hill_estimator(Eigen::ArrayXd::Constant(100, 2.0)); }) ==
          ErrorKind::DegenerateTail);
  }

  TEST_CASE("autocorrelation of an alternating series") {
    const auto x = alternating(100);
    CHECK(autocorrelation(x, 2) == doctest::Approx(0.98).epsilon(1e-14));
    CHECK(autocorrelation(x, 1) == doctest::Approx(-0.99).epsilon(1e-14));
  }

  TEST_CASE("autocorrelation errors") {
    CHECK(error_kind([] { (void)autocorrelation(Eigen::ArrayXd::Constant(10, 1.0), 1); }) ==
          ErrorKind::DegenerateSample);
    CHECK(error_kind([] { (void)autocorrelation(alternating(10), 9); }) == ErrorKind::LagTooLarge);
    CHECK(error_kind([] { (void)autocorrelation(alternating(10), 0); }) == ErrorKind::LagTooLarge);
    CHECK(error_kind([] { (void)acf_profile(alternating(10), 9); }) == ErrorKind::LagTooLarge);
  }

  TEST_CASE("acf profile agrees with single-lag autocorrelation and the brute-force oracle") {
    const auto g = oracle::gaussian(300, 16);
    const auto x = array(g);
    const auto profile = acf_profile(x, 40);
    REQUIRE(profile.lags.size() == 40);
    for (std::size_t i = 0; i < profile.lags.size(); ++i) {
      const auto lag = profile.lags[i];
      CHECK(lag == static_cast<Eigen::Index>(i) + 1);
      CHECK(profile.values[lag - 1] == autocorrelation(x, lag));
      CHECK(std::abs(profile.values[lag - 1] - oracle::acf(g, static_cast<std::size_t>(lag))) < 1e-14);
      CHECK(std::abs(profile.values[lag - 1]) <= 1.0);
    }
  }

  TEST_CASE("white noise stays inside the null band") {
    const auto g = oracle::gaussian(100'000, 17);
    const auto profile = acf_profile(array(g), 100);
    const double band = white_noise_band(g.size());
    CHECK((profile.values.abs() < band).all());
  }

  TEST_CASE("AR(1) autocorrelation decays as phi^l") {
    const double phi = 0.8;
    const auto x = oracle::ar1(1'000'000, phi, 18);
    const auto profile = acf_profile(array(x), 20);
    for (Eigen::Index l = 1; l <= 20; ++l) CHECK(std::abs(profile.values[l - 1] - std::pow(phi, l)) < 0.01);
  }

  TEST_CASE("tail cdf points") {
    const auto pts = tail_cdf_points(array({4, 2, 3, 1}));
    REQUIRE(pts.size() == 4);
    CHECK(pts.front().value == 1.0);
    CHECK(pts.front().ccdf == 0.75);
    CHECK(pts.back().value == 4.0);
    CHECK(pts.back().ccdf == 0.0);

    const auto ties = tail_cdf_points(array({1, 1, 2}));
    REQUIRE(ties.size() == 2);
    CHECK(ties[0].ccdf == doctest::Approx(1.0 / 3.0));

    const auto p = oracle::pareto(20000, 2.0, 19);
    const auto many = tail_cdf_points(array(p));
    for (std::size_t i = 1; i < many.size(); ++i) {
      CHECK(many[i].value > many[i - 1].value);
      CHECK(many[i].ccdf <= many[i - 1].ccdf);
    }
    CHECK(error_kind([] { (void)tail_cdf_points(Eigen::ArrayXd(0)); }) == ErrorKind::InsufficientData);
  }

  TEST_CASE("power fit of a Pareto tail") {
    const double mu = 2.0;
    const auto p = oracle::pareto(100'000, mu, 20);
    std::vector<TailPoint> top;
    for (const auto& pt : tail_cdf_points(array(p))) {
      if (pt.ccdf < 0.1) top.push_back(pt);
    }
    const auto fit = fit_power_decay(top);
    CHECK(std::abs(fit.exponent - mu) < 0.2);
  }

  TEST_CASE("power fit on exact power laws") {
    Eigen::ArrayXd l = Eigen::ArrayXd::LinSpaced(50, 1, 50);
    const auto a = fit_power_decay(l, l.pow(-0.5));
    CHECK(std::abs(a.exponent - 0.5) < 1e-10);
    CHECK(a.fit_residual < 1e-10);
    CHECK(a.points_used == 50);
    for (double c : {1e-3, 1.0, 42.0}) {
      const auto b = fit_power_decay(l, c * l.pow(-1.2));
      CHECK(std::abs(b.exponent - 1.2) < 1e-10);
      CHECK(std::abs(b.intercept - std::log(c)) < 1e-10);
    }
  }

  TEST_CASE("power fit errors") {
    Eigen::ArrayXd l = Eigen::ArrayXd::LinSpaced(10, 1, 10);
    Eigen::ArrayXd v = -l;
    v[0] = 1.0;
    CHECK(error_kind([&] { (void)fit_power_decay(l, v); }) == ErrorKind::InsufficientPositivePoints);
    CHECK(error_kind([&] { (void)fit_power_decay(l, l); }) == ErrorKind::DegenerateFit);
    CHECK(error_kind([&] { (void)fit_power_decay(Eigen::ArrayXd::Constant(10, 2.0), l); }) ==
          ErrorKind::DegenerateFit);
  }

  TEST_CASE("histogram") {
    const auto h = histogram_data(array({0, 0, 1, 1}), 2);
    REQUIRE(h.counts.size() == 2);
    CHECK(h.counts[0] == 2);
    CHECK(h.counts[1] == 2);
    CHECK(h.upper[1] == 1.0);

    const auto g = oracle::gaussian(1'000'000, 21);
    const auto big = histogram_data(array(g));
    CHECK(std::accumulate(big.counts.begin(), big.counts.end(), std::size_t{0}) == g.size());
    CHECK((big.frequency - big.fitted_frequency).abs().maxCoeff() < 0.01);
    CHECK(error_kind([] { (void)histogram_data(Eigen::ArrayXd::Constant(5, 1.0)); }) ==
          ErrorKind::DegenerateSample);
  }

  TEST_CASE("normal quantile") {
    const boost::math::normal_distribution<double> n01;
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(std::abs(normal_quantile(0.975) - 1.959964) < 1e-6);
    for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.7, 0.975, 0.999999}) {
      CHECK(normal_quantile(p) == doctest::Approx(boost::math::quantile(n01, p)).epsilon(1e-14));
    }
    CHECK(error_kind([] { (void)normal_quantile(0.0); }) == ErrorKind::InsufficientData);
  }

  TEST_CASE("qq plot of an exact Gaussian quantile sample lies on the identity") {
    const int n = 999;
    Eigen::ArrayXd x(n);
    for (int i = 0; i < n; ++i) x[i] = normal_quantile((i + 0.5) / n);
    const auto qq = qq_data(x);
    for (const auto& pt : qq) CHECK(std::abs(pt.empirical_quantile - pt.standard_quantile) < 1e-6);
    CHECK(qq[n / 2].standard_quantile == 0.0);
    CHECK(qq[n / 2].empirical_quantile == doctest::Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("qq plot of Gaussian draws is near the identity in the central 99%") {
    const auto g = oracle::gaussian(4'000'000, 22);
    const auto qq = qq_data(array(g));
    const auto lo = qq.size() / 200, hi = qq.size() - lo;
    double worst = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      worst = std::max(worst, std::abs(qq[i].empirical_quantile - qq[i].theoretical_quantile));
    }
    CHECK(worst < 1e-2);
  }

  TEST_CASE("full report") {
    const auto g = oracle::gaussian(50'000, 23);
    const auto r = full_report(ReturnSeries(array(g), ReturnKind::raw));
    CHECK(r.sample_size == 50'000);
    CHECK(r.acf_at_lags.size() == 4);
    CHECK(r.hill > 3.0);
    CHECK(std::abs(r.excess_kurtosis) < 0.1);
    const auto again = full_report(ReturnSeries(array(g), ReturnKind::raw));
    CHECK(again.skew == r.skew);
    CHECK(again.acf_at_lags == r.acf_at_lags);

    const auto msg = support::error_message(
        [] { (void)full_report(ReturnSeries(Eigen::ArrayXd::Constant(100, 0.01), ReturnKind::raw)); });
    CHECK(msg.find("skew") != std::string::npos);
  }
}

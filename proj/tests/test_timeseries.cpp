#include <cmath>
#include <random>

#include <doctest.h>

#include "abm/timeseries.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace abm;
using support::array;

TEST_SUITE("timeseries") {
  TEST_CASE("constant prices give zero returns") {
    const auto r = log_returns(PriceSeries(array({100, 100, 100})));
    CHECK(r.size() == 2);
    CHECK(r.values()[0] == 0.0);
    CHECK(r.values()[1] == 0.0);
    CHECK(r.kind() == ReturnKind::raw);
  }

  TEST_CASE("exact logs") {
    const double e = std::exp(1.0);
    const auto r = log_returns(PriceSeries(array({1.0, e, e * e})));
    CHECK(r.values()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.values()[1] == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("log returns match a 50-digit oracle") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(50.0, 150.0);
    std::vector<double> prices(1000);
    for (auto& p : prices) p = u(gen);
    const auto got = log_returns(PriceSeries(array(prices))).values();
    const auto want = oracle::log_returns(prices);
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      worst = std::max(worst, oracle::rel_err(got[static_cast<Eigen::Index>(i)], want[i]));
    }
    CHECK(worst < 1e-12);
  }

  TEST_CASE("log returns are scale invariant") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    Eigen::ArrayXd p(200);
    for (auto& v : p) v = u(gen);
    const auto a = log_returns(PriceSeries(p)).values();
    for (double scale : {1e-3, 2.5, 1e6}) {
      const auto b = log_returns(PriceSeries(Eigen::ArrayXd(p * scale))).values();
      CHECK(((a - b).abs() < 1e-12).all());
    }
  }

  TEST_CASE("absolute returns") {
    const auto r = absolute_returns(ReturnSeries(array({-1, 2, 0}), ReturnKind::raw));
    CHECK(r.kind() == ReturnKind::absolute);
    CHECK((r.values() == array({1, 2, 0})).all());
    CHECK(absolute_returns(ReturnSeries(Eigen::ArrayXd(0), ReturnKind::raw)).size() == 0);

    std::mt19937_64 gen(9);
    std::normal_distribution<double> z;
    Eigen::ArrayXd raw(500);
    for (auto& v : raw) v = z(gen);
    const auto abs = absolute_returns(ReturnSeries(raw, ReturnKind::raw)).values();
    for (Eigen::Index i = 0; i < raw.size(); ++i) CHECK(abs[i] == (raw[i] < 0 ? -raw[i] : raw[i]));
  }

  TEST_CASE("validation errors") {
    using support::error_kind;
    CHECK(error_kind([] { (void)PriceSeries(array({1.0, 0.0, 2.0})); }) == ErrorKind::InvalidPrice);
    CHECK(error_kind([] { (void)PriceSeries(array({1.0, -3.0})); }) == ErrorKind::InvalidPrice);
    CHECK(error_kind([] { (void)PriceSeries(array({1.0, NAN})); }) == ErrorKind::InvalidPrice);
    CHECK(error_kind([] { (void)log_returns(PriceSeries(array({1.0}))); }) == ErrorKind::InsufficientData);
    CHECK(error_kind([] { (void)ReturnSeries(array({0.1, -0.1}), ReturnKind::absolute); }) ==
          ErrorKind::InvalidKind);
    CHECK(error_kind([] { (void)absolute_returns(ReturnSeries(array({0.1}), ReturnKind::absolute)); }) ==
          ErrorKind::InvalidKind);

    const auto d1 = *parse_iso_date("2018-01-02");
    const auto d2 = *parse_iso_date("2018-01-03");
    CHECK(error_kind([&] { (void)PriceSeries({d2, d1}, array({1, 2})); }) == ErrorKind::DuplicateDate);
    CHECK(error_kind([&] { (void)PriceSeries({d1, d1}, array({1, 2})); }) == ErrorKind::DuplicateDate);
    CHECK(error_kind([&] { (void)PriceSeries({d1}, array({1, 2})); }) == ErrorKind::InsufficientData);
  }

  TEST_CASE("iso dates") {
    CHECK(format_iso_date(*parse_iso_date("1896-05-27")) == "1896-05-27");
    CHECK_FALSE(parse_iso_date("2018-02-30"));
    CHECK_FALSE(parse_iso_date("2018-2-3"));
    CHECK_FALSE(parse_iso_date("not a date"));
  }
}

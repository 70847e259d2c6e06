#include "abm/timeseries.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "abm/error.hpp"

namespace abm {

namespace {

bool parse_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
      !parse_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_iso_date(const Date& date) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

PriceSeries::PriceSeries(std::vector<Date> dates, Eigen::ArrayXd prices, std::string label)
    : dates_(std::move(dates)), prices_(std::move(prices)), label_(std::move(label)) {
  if (static_cast<Eigen::Index>(dates_.size()) != prices_.size()) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("{} dates for {} prices", dates_.size(), prices_.size()));
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (!(std::chrono::sys_days{dates_[i - 1]} < std::chrono::sys_days{dates_[i]})) {
      throw Error(ErrorKind::DuplicateDate,
                  fmt::format("dates not strictly increasing at index {} ({})", i,
                              format_iso_date(dates_[i])));
    }
  }
  for (Eigen::Index i = 0; i < prices_.size(); ++i) {
    if (!(prices_[i] > 0.0) || !std::isfinite(prices_[i])) {
      throw Error(ErrorKind::InvalidPrice,
                  fmt::format("price at index {} is {}, must be finite and > 0", i, prices_[i]));
    }
  }
}

namespace {

std::vector<Date> consecutive_days(Eigen::Index n) {
  std::vector<Date> out;
  out.reserve(static_cast<std::size_t>(n));
  const std::chrono::sys_days origin{std::chrono::year{1970} / 1 / 1};
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(origin + std::chrono::days{i});
  return out;
}

}  // namespace

PriceSeries::PriceSeries(Eigen::ArrayXd prices, std::string label)
    : PriceSeries(consecutive_days(prices.size()), prices, std::move(label)) {}

std::string_view to_string(ReturnKind kind) noexcept {
  return kind == ReturnKind::raw ? "raw" : "absolute";
}

ReturnSeries::ReturnSeries(Eigen::ArrayXd values, ReturnKind kind, std::string origin)
    : values_(std::move(values)), kind_(kind), origin_(std::move(origin)) {
  if (kind_ == ReturnKind::absolute && (values_ < 0.0).any()) {
    throw Error(ErrorKind::InvalidKind, "absolute return series contains negative values");
  }
}

ReturnSeries log_returns(const PriceSeries& prices) {
  const Eigen::Index n = prices.size();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("log returns need at least 2 prices, got {}", n));
  }
  // log1p of the relative change keeps full relative precision for small moves and gives
  // exactly 0 for equal prices.
  const Eigen::ArrayXd& p = prices.prices();
  Eigen::ArrayXd r(n - 1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) r[k] = std::log1p((p[k + 1] - p[k]) / p[k]);
  return ReturnSeries(std::move(r), ReturnKind::raw, prices.label());
}

ReturnSeries absolute_returns(const ReturnSeries& returns) {
  if (returns.kind() != ReturnKind::raw) {
    throw Error(ErrorKind::InvalidKind, "input series is already absolute");
  }
  return ReturnSeries(returns.values().abs(), ReturnKind::absolute, returns.origin());
}

}  // namespace abm

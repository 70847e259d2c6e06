#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace abm {

using Date = std::chrono::year_month_day;

/// Parses an ISO `YYYY-MM-DD` date; returns nullopt on malformed or invalid dates.
[[nodiscard]] std::optional<Date> parse_iso_date(std::string_view text);
[[nodiscard]] std::string format_iso_date(const Date& date);

/// Dated sequence of strictly positive daily prices for a single asset.
/// Construction validates: equal lengths, strictly increasing dates, every price > 0.
class PriceSeries {
 public:
  PriceSeries(std::vector<Date> dates, Eigen::ArrayXd prices, std::string label = {});

  /// Undated convenience constructor (synthetic data, simulation output). Dates are
  /// consecutive days from 1970-01-01.
  explicit PriceSeries(Eigen::ArrayXd prices, std::string label = {});

  [[nodiscard]] const std::vector<Date>& dates() const noexcept { return dates_; }
  [[nodiscard]] const Eigen::ArrayXd& prices() const noexcept { return prices_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] Eigen::Index size() const noexcept { return prices_.size(); }

 private:
  std::vector<Date> dates_;
  Eigen::ArrayXd prices_;
  std::string label_;
};

enum class ReturnKind { raw, absolute };

[[nodiscard]] std::string_view to_string(ReturnKind kind) noexcept;

/// Logarithmic returns without dates; all downstream statistics are index-based.
class ReturnSeries {
 public:
  ReturnSeries(Eigen::ArrayXd values, ReturnKind kind, std::string origin = {});

  [[nodiscard]] const Eigen::ArrayXd& values() const noexcept { return values_; }
  [[nodiscard]] ReturnKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& origin() const noexcept { return origin_; }
  [[nodiscard]] Eigen::Index size() const noexcept { return values_.size(); }

 private:
  Eigen::ArrayXd values_;
  ReturnKind kind_;
  std::string origin_;
};

/// r_k = ln p_{k+1} - ln p_k. Throws InsufficientData for fewer than two prices.
[[nodiscard]] ReturnSeries log_returns(const PriceSeries& prices);

/// Elementwise |r|. Throws InvalidKind if `returns` is already absolute.
[[nodiscard]] ReturnSeries absolute_returns(const ReturnSeries& returns);

}  // namespace abm

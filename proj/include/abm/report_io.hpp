#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "abm/sim.hpp"
#include "abm/stats.hpp"

// File formats. CSV tables use 5 decimal places, figure arrays 6 significant digits,
// simulation series full round-trip precision; JSON always carries full precision.
namespace abm::io {

[[nodiscard]] std::string fixed5(double value);
[[nodiscard]] std::string sig6(double value);
[[nodiscard]] std::string full_precision(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
[[nodiscard]] std::string csv_field(const std::string& text);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& document);

[[nodiscard]] nlohmann::json to_json(const stats::StatsReport& report);
[[nodiscard]] nlohmann::json to_json(const SimDiagnostics& diagnostics);
[[nodiscard]] nlohmann::json to_json(const stats::TailFit& fit);

/// `index,<name>` rows with full precision.
void write_series_csv(const std::string& path, const std::string& name, const Eigen::ArrayXd& values);

void write_histogram_csv(const std::string& path, const stats::Histogram& histogram);
void write_qq_csv(const std::string& path, const std::vector<stats::QqPoint>& points);
void write_acf_csv(const std::string& path, const stats::AcfProfile& raw, const stats::AcfProfile& absolute);
void write_tail_cdf_csv(const std::string& path, const std::vector<stats::TailPoint>& points);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

[[nodiscard]] CsvTable read_csv(const std::string& path);
[[nodiscard]] nlohmann::json read_json(const std::string& path);

/// Reads one numeric column by header name (e.g. the `return` column of returns.csv).
[[nodiscard]] Eigen::ArrayXd read_numeric_column(const std::string& path, const std::string& column);

}  // namespace abm::io

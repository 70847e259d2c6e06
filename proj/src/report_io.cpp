#include "abm/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace abm::io {

using nlohmann::json;

std::string fixed5(double value) { return fmt::format("{:.5f}", value); }
std::string sig6(double value) { return fmt::format("{:.6g}", value); }
std::string full_precision(double value) { return fmt::format("{:.17g}", value); }

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, fmt::format("cannot write '{}'", path));
  out << content;
  if (!out) throw Error(ErrorKind::IoError, fmt::format("write failed for '{}'", path));
}

void write_json(const std::string& path, const json& document) { write_text(path, document.dump(2) + "\n"); }

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const stats::StatsReport& report) {
  json acf = json::object();
  for (const auto& [lag, value] : report.acf_at_lags) acf[std::to_string(lag)] = number(value);
  return {
      {"kind", std::string(to_string(report.kind))},
      {"sample_size", report.sample_size},
      {"skew", number(report.skew)},
      {"excess_kurtosis", number(report.excess_kurtosis)},
      {"hill", number(report.hill)},
      {"tail_fraction", report.tail_fraction},
      {"acf", acf},
  };
}

json to_json(const SimDiagnostics& d) {
  return {
      {"seed", d.seed},
      {"steps_completed", d.steps_completed},
      {"herding_switches", d.herding_switches},
      {"band_switches", d.band_switches},
      {"blowup", d.blowup},
      {"blowup_step", d.blowup_step},
      {"final_excess_demand", number(d.final_excess_demand)},
      {"final_log_price", number(d.final_log_price)},
  };
}

json to_json(const stats::TailFit& fit) {
  return {{"exponent", number(fit.exponent)},
          {"intercept", number(fit.intercept)},
          {"fit_residual", number(fit.fit_residual)},
          {"points_used", fit.points_used}};
}

void write_series_csv(const std::string& path, const std::string& name, const Eigen::ArrayXd& values) {
  std::string out = "index," + name + "\n";
  for (Eigen::Index i = 0; i < values.size(); ++i) out += fmt::format("{},{}\n", i, full_precision(values[i]));
  write_text(path, out);
}

void write_histogram_csv(const std::string& path, const stats::Histogram& h) {
  std::string out = "lower,upper,center,count,frequency,fitted_density,fitted_frequency\n";
  for (Eigen::Index b = 0; b < h.centers.size(); ++b) {
    out += fmt::format("{},{},{},{},{},{},{}\n", sig6(h.lower[b]), sig6(h.upper[b]), sig6(h.centers[b]),
                       h.counts[static_cast<std::size_t>(b)], sig6(h.frequency[b]), sig6(h.fitted_density[b]),
                       sig6(h.fitted_frequency[b]));
  }
  write_text(path, out);
}

void write_qq_csv(const std::string& path, const std::vector<stats::QqPoint>& points) {
  std::string out = "standard_quantile,theoretical_quantile,empirical_quantile\n";
  for (const auto& p : points) {
    out += fmt::format("{},{},{}\n", sig6(p.standard_quantile), sig6(p.theoretical_quantile),
                       sig6(p.empirical_quantile));
  }
  write_text(path, out);
}

void write_acf_csv(const std::string& path, const stats::AcfProfile& raw, const stats::AcfProfile& absolute) {
  std::string out = "lag,raw,absolute\n";
  for (std::size_t i = 0; i < raw.lags.size(); ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    out += fmt::format("{},{},{}\n", raw.lags[i], sig6(raw.values[idx]), sig6(absolute.values[idx]));
  }
  write_text(path, out);
}

void write_tail_cdf_csv(const std::string& path, const std::vector<stats::TailPoint>& points) {
  std::string out = "value,ccdf\n";
  for (const auto& p : points) out += fmt::format("{},{}\n", sig6(p.value), sig6(p.ccdf));
  write_text(path, out);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path));
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::SchemaError, fmt::format("{}: empty file", path));
  table.header = split_csv_line(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto row = split_csv_line(line);
    if (row.size() != table.header.size()) {
      throw Error(ErrorKind::SchemaError, fmt::format("{}:{}: {} fields, header has {}", path, line_no,
                                                      row.size(), table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
}

Eigen::ArrayXd read_numeric_column(const std::string& path, const std::string& column) {
  const auto table = read_csv(path);
  const auto it = std::find(table.header.begin(), table.header.end(), column);
  if (it == table.header.end()) {
    throw Error(ErrorKind::SchemaError, fmt::format("{}: column '{}' not found", path, column));
  }
  const auto col = static_cast<std::size_t>(it - table.header.begin());
  Eigen::ArrayXd values(static_cast<Eigen::Index>(table.rows.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& text = table.rows[r][col];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw Error(ErrorKind::SchemaError, fmt::format("{}: row {}: '{}' is not a number", path, r + 2, text));
    }
    values[static_cast<Eigen::Index>(r)] = v;
  }
  return values;
}

}  // namespace abm::io

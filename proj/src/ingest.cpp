#include "abm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "abm/error.hpp"

namespace abm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string normalize_header(std::string_view name) {
  name = trim(name);
  if (name.starts_with("\xEF\xBB\xBF")) name.remove_prefix(3);
  if (name.size() >= 2 && name.front() == '<' && name.back() == '>') name = name.substr(1, name.size() - 2);
  if (name.size() >= 2 && name.front() == '"' && name.back() == '"') name = name.substr(1, name.size() - 2);
  std::string out(name);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == delimiter && !quoted) {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  fields.push_back(line.substr(start));
  for (auto& f : fields) {
    f = trim(f);
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
  }
  return fields;
}

bool parse_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::optional<Date> make_date(unsigned y, unsigned m, unsigned d) {
  Date date{std::chrono::year{static_cast<int>(y)}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<double> parse_price(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& name,
                           const std::string& path) {
  const auto wanted = normalize_header(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == wanted) return i;
  }
  throw Error(ErrorKind::SchemaError, fmt::format("{}: column '{}' not found in header", path, name));
}

std::size_t column_index(const std::string& field, const std::string& path) {
  unsigned idx = 0;
  if (!parse_uint(field, idx)) {
    throw Error(ErrorKind::SchemaError,
                fmt::format("{}: without a header, column '{}' must be a zero-based index", path, field));
  }
  return idx;
}

}  // namespace

DateFormat parse_date_format(const std::string& pattern) {
  if (pattern == "YYYY-MM-DD" || pattern == "iso") return DateFormat::iso;
  if (pattern == "YYYYMMDD" || pattern == "compact") return DateFormat::compact;
  if (pattern == "MM/DD/YYYY" || pattern == "us") return DateFormat::us;
  if (pattern == "DD.MM.YYYY" || pattern == "european") return DateFormat::european;
  throw Error(ErrorKind::ConfigError, fmt::format("date_format: unsupported pattern '{}'", pattern));
}

std::optional<Date> parse_date(std::string_view text, DateFormat format) {
  text = trim(text);
  unsigned y = 0, m = 0, d = 0;
  switch (format) {
    case DateFormat::iso:
      return parse_iso_date(text);
    case DateFormat::compact:
      if (text.size() != 8 || !parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(4, 2), m) ||
          !parse_uint(text.substr(6, 2), d)) {
        return std::nullopt;
      }
      return make_date(y, m, d);
    case DateFormat::us:
      if (text.size() != 10 || text[2] != '/' || text[5] != '/' || !parse_uint(text.substr(0, 2), m) ||
          !parse_uint(text.substr(3, 2), d) || !parse_uint(text.substr(6, 4), y)) {
        return std::nullopt;
      }
      return make_date(y, m, d);
    case DateFormat::european:
      if (text.size() != 10 || text[2] != '.' || text[5] != '.' || !parse_uint(text.substr(0, 2), d) ||
          !parse_uint(text.substr(3, 2), m) || !parse_uint(text.substr(6, 4), y)) {
        return std::nullopt;
      }
      return make_date(y, m, d);
  }
  return std::nullopt;
}

IngestResult read_prices(const std::string& path, const CsvSpec& spec, std::optional<Date> from,
                         std::optional<Date> to) {
  using std::chrono::sys_days;
  if (from && to && sys_days{*to} < sys_days{*from}) {
    throw Error(ErrorKind::ConfigError,
                fmt::format("window: from {} is after to {}", format_iso_date(*from), format_iso_date(*to)));
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open '{}'", path));

  std::string line;
  std::size_t line_no = 0;
  std::size_t date_col = 0, price_col = 0;
  if (spec.header_present) {
    std::vector<std::string> header;
    while (std::getline(in, line)) {
      ++line_no;
      if (!trim(line).empty()) break;
    }
    for (auto f : split(line, spec.delimiter)) header.push_back(normalize_header(f));
    date_col = resolve_column(header, spec.date_column, path);
    price_col = resolve_column(header, spec.price_column, path);
  } else {
    date_col = column_index(spec.date_column, path);
    price_col = column_index(spec.price_column, path);
  }

  struct Row {
    sys_days day;
    double price;
  };
  std::vector<Row> rows;
  std::map<sys_days, std::size_t> seen;  // date -> line number
  std::size_t rows_in = 0, skipped = 0, out_of_window = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++rows_in;
    const auto fields = split(line, spec.delimiter);
    const auto date = date_col < fields.size() ? parse_date(fields[date_col], spec.date_format) : std::nullopt;
    if (!date) {
      ++skipped;
      continue;
    }
    const sys_days day{*date};
    if (auto [it, inserted] = seen.emplace(day, line_no); !inserted) {
      throw Error(ErrorKind::DuplicateDate, fmt::format("{}: date {} on lines {} and {}", path,
                                                        format_iso_date(*date), it->second, line_no));
    }
    if ((from && day < sys_days{*from}) || (to && sys_days{*to} < day)) {
      ++out_of_window;
      continue;
    }
    const auto price = price_col < fields.size() ? parse_price(fields[price_col]) : std::nullopt;
    if (!price || !(*price > 0.0) || !std::isfinite(*price)) {
      ++skipped;
      continue;
    }
    rows.push_back({day, *price});
  }
  if (rows.empty()) {
    throw Error(ErrorKind::EmptyWindow, fmt::format("{}: no usable rows in window [{}, {}]", path,
                                                    from ? format_iso_date(*from) : "-inf",
                                                    to ? format_iso_date(*to) : "+inf"));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.day < b.day; });
  std::vector<Date> dates;
  Eigen::ArrayXd prices(static_cast<Eigen::Index>(rows.size()));
  dates.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dates.emplace_back(rows[i].day);
    prices[static_cast<Eigen::Index>(i)] = rows[i].price;
  }
  const auto used = rows.size();
  return IngestResult{PriceSeries(std::move(dates), std::move(prices), path), rows_in, used, skipped,
                      out_of_window};
}

Manifest load_manifest(const std::string& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, fmt::format("cannot open manifest '{}'", path));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
  auto fail = [&](const std::string& field, const std::string& msg) -> Error {
    return Error(ErrorKind::ConfigError, fmt::format("{}: {}: {}", path, field, msg));
  };
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw fail("entries", "must be an array");
  }
  const auto base = std::filesystem::path(path).parent_path();
  Manifest manifest;
  try {
    for (std::size_t i = 0; i < doc["entries"].size(); ++i) {
      const auto& e = doc["entries"][i];
      const auto at = fmt::format("entries[{}]", i);
      if (!e.is_object() || !e.contains("path") || !e["path"].is_string()) throw fail(at + ".path", "required string");
      ManifestEntry entry;
      const std::filesystem::path file = e["path"].get<std::string>();
      entry.path = (file.is_absolute() ? file : base / file).string();
      entry.label = e.value("label", file.stem().string());
      entry.spec.price_column = e.value("price_column", entry.spec.price_column);
      entry.spec.date_column = e.value("date_column", entry.spec.date_column);
      entry.spec.header_present = e.value("header", true);
      if (e.contains("date_format")) entry.spec.date_format = parse_date_format(e["date_format"].get<std::string>());
      if (e.contains("delimiter")) {
        const auto d = e["delimiter"].get<std::string>();
        if (d.size() != 1) throw fail(at + ".delimiter", "must be a single character");
        entry.spec.delimiter = d[0];
      }
      for (const char* key : {"from", "to"}) {
        if (!e.contains(key)) continue;
        const auto date = parse_iso_date(e[key].get<std::string>());
        if (!date) throw fail(at + "." + key, "must be an ISO date YYYY-MM-DD");
        (std::string_view(key) == "from" ? entry.from : entry.to) = date;
      }
      manifest.entries.push_back(std::move(entry));
    }
    if (doc.contains("lags")) manifest.lags = doc["lags"].get<std::vector<long>>();
    if (doc.contains("tail_fraction")) manifest.tail_fraction = doc["tail_fraction"].get<double>();
  } catch (const json::exception& e) {
    throw fail("<document>", e.what());
  }
  return manifest;
}

}  // namespace abm

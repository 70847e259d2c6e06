#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "abm/timeseries.hpp"

namespace abm {

enum class DateFormat {
  iso,       // YYYY-MM-DD
  compact,   // YYYYMMDD (stooq .txt exports)
  us,        // MM/DD/YYYY
  european,  // DD.MM.YYYY
};

/// Accepts the pattern spelling ("YYYY-MM-DD", "YYYYMMDD", "MM/DD/YYYY", "DD.MM.YYYY").
[[nodiscard]] DateFormat parse_date_format(const std::string& pattern);
[[nodiscard]] std::optional<Date> parse_date(std::string_view text, DateFormat format);

/// Column layout of a daily price file. With a header, columns are matched by name
/// (case-insensitive, stooq's `<OPEN>` style brackets ignored); without one, the column
/// fields hold zero-based indices.
struct CsvSpec {
  std::string date_column = "Date";
  std::string price_column = "Open";
  DateFormat date_format = DateFormat::iso;
  char delimiter = ',';
  bool header_present = true;
};

struct IngestResult {
  PriceSeries series;
  std::size_t rows_in = 0;
  std::size_t rows_used = 0;
  std::size_t rows_skipped = 0;  // unparseable date, or missing/unparseable/non-positive price
  std::size_t rows_out_of_window = 0;
};

/// Reads a price file, keeps rows with from <= date <= to (either bound optional), and sorts
/// them by date. Bad rows are skipped and counted.
/// Errors: SchemaError (missing columns), EmptyWindow (no usable rows), DuplicateDate (two
/// rows with the same date, both line numbers reported), IoError.
[[nodiscard]] IngestResult read_prices(const std::string& path, const CsvSpec& spec = {},
                                       std::optional<Date> from = std::nullopt,
                                       std::optional<Date> to = std::nullopt);

/// One column of a batch analysis.
struct ManifestEntry {
  std::string label;
  std::string path;  // resolved against the manifest's directory
  CsvSpec spec;
  std::optional<Date> from;
  std::optional<Date> to;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::optional<std::vector<long>> lags;
  std::optional<double> tail_fraction;
};

/// Manifest document:
/// {"entries": [{"label", "path", "from", "to", "price_column", "date_column",
///               "date_format", "delimiter", "header"}], "lags": [...], "tail_fraction": x}
[[nodiscard]] Manifest load_manifest(const std::string& path);

}  // namespace abm

#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Monthly empirical series and the gap construction used for overlays:
// inflation gap = year-over-year percent change of a price index minus the
// target, tightness gap = tightness minus its efficient value 1.

namespace bpc::io {

struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  /// Months since year 0, so a 12-month lag is `ordinal() - 12`.
  int ordinal() const { return year * 12 + (month - 1); }
  static YearMonth from_ordinal(int ordinal);

  /// Accepts "YYYY-MM" and "YYYY-MM-DD" (the day is ignored).
  static YearMonth parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const YearMonth&) const = default;
};

struct SeriesPoint {
  YearMonth date;
  double value;
};

struct GapPoint {
  YearMonth date;
  double tightness_gap;
  double inflation_gap;
};

using GapSeries = std::vector<GapPoint>;

/// Reads `date,value` rows. A first line that does not parse as a date is
/// treated as a header. Dates must be strictly increasing and values finite.
std::vector<SeriesPoint> parse_series_csv(std::istream& in, std::string_view source);
std::vector<SeriesPoint> read_series_csv(const std::filesystem::path& path);

void validate_series(std::span<const SeriesPoint> series, std::string_view name);

/// Gaps at every tightness date where the index is also available at that
/// month and twelve months earlier.
GapSeries compute_gaps(std::span<const SeriesPoint> price_index,
                       std::span<const SeriesPoint> tightness, double target = 0.02);

/// Calendar-quarter means of complete quarters (all three months present),
/// dated by the first month of the quarter.
GapSeries quarterly_means(const GapSeries& monthly);

void write_gaps_csv(std::ostream& out, const GapSeries& gaps);
GapSeries parse_gaps_csv(std::istream& in, std::string_view source);
GapSeries read_gaps_csv(const std::filesystem::path& path);

}  // namespace bpc::io

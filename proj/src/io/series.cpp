#include "bpc/io/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "bpc/error.hpp"
#include "bpc/io/format.hpp"

namespace bpc::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool try_parse_date(std::string_view text, YearMonth& out) {
  try {
    out = YearMonth::parse(text);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io_failure, "cannot open " + path.string());
  }
  return in;
}

}  // namespace

YearMonth YearMonth::from_ordinal(int ordinal) {
  const int year = ordinal >= 0 ? ordinal / 12 : -((-ordinal + 11) / 12);
  return {year, ordinal - year * 12 + 1};
}

YearMonth YearMonth::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '"' && text.back() == '"' && text.size() >= 2) {
    text = text.substr(1, text.size() - 2);
  }
  YearMonth ym;
  const bool shape_ok = (text.size() == 7 || text.size() == 10) && text[4] == '-' &&
                        (text.size() == 7 || text[7] == '-');
  int day = 1;
  if (!shape_ok || !parse_int(text.substr(0, 4), ym.year) ||
      !parse_int(text.substr(5, 2), ym.month) || ym.month < 1 || ym.month > 12 ||
      (text.size() == 10 && (!parse_int(text.substr(8, 2), day) || day < 1 || day > 31))) {
    throw Error(ErrorKind::invalid_series,
                "not an ISO-8601 month: '" + std::string(text) + "'");
  }
  return ym;
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

std::vector<SeriesPoint> parse_series_csv(std::istream& in, std::string_view source) {
  std::vector<SeriesPoint> series;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view);
    YearMonth date;
    if (!try_parse_date(fields[0], date)) {
      if (series.empty() && line_no == 1) continue;  // header
      throw Error(ErrorKind::invalid_series, std::string(source) + ":" +
                                                 std::to_string(line_no) +
                                                 ": bad date '" + std::string(fields[0]) + "'");
    }
    double value = 0.0;
    if (fields.size() < 2 || !parse_double(fields[1], value)) {
      throw Error(ErrorKind::invalid_series, std::string(source) + ":" +
                                                 std::to_string(line_no) + ": bad value");
    }
    series.push_back({date, value});
  }
  validate_series(series, source);
  return series;
}

std::vector<SeriesPoint> read_series_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_series_csv(in, path.string());
}

void validate_series(std::span<const SeriesPoint> series, std::string_view name) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!std::isfinite(series[i].value)) {
      throw Error(ErrorKind::invalid_series,
                  std::string(name) + ": non-finite value at " + series[i].date.to_string());
    }
    if (i > 0 && !(series[i - 1].date < series[i].date)) {
      throw Error(ErrorKind::invalid_series,
                  std::string(name) + ": dates not strictly increasing at " +
                      series[i].date.to_string());
    }
  }
}

GapSeries compute_gaps(std::span<const SeriesPoint> price_index,
                       std::span<const SeriesPoint> tightness, double target) {
  validate_series(price_index, "price index");
  validate_series(tightness, "tightness");
  if (price_index.size() < 13) {
    throw Error(ErrorKind::insufficient_history,
                "year-over-year inflation needs at least 13 months of index data");
  }
  std::map<int, double> index_by_month;
  for (const auto& p : price_index) {
    if (!(p.value > 0.0)) {
      throw Error(ErrorKind::invalid_series,
                  "price index must be positive at " + p.date.to_string());
    }
    index_by_month.emplace(p.date.ordinal(), p.value);
  }
  bool any_yoy = false;
  for (const auto& [month, value] : index_by_month) {
    if (index_by_month.count(month - 12)) {
      any_yoy = true;
      break;
    }
  }
  if (!any_yoy) {
    throw Error(ErrorKind::insufficient_history,
                "no index month has an observation twelve months earlier");
  }

  GapSeries gaps;
  for (const auto& t : tightness) {
    const auto now = index_by_month.find(t.date.ordinal());
    const auto year_ago = index_by_month.find(t.date.ordinal() - 12);
    if (now == index_by_month.end() || year_ago == index_by_month.end()) continue;
    // Same value as (I_t / I_{t-12} - 1) - target, without the cancellation
    // in the subtraction of 1.
    const double base = year_ago->second;
    const double inflation_gap = ((now->second - base) - target * base) / base;
    gaps.push_back({t.date, t.value - 1.0, inflation_gap});
  }
  if (gaps.empty()) {
    throw Error(ErrorKind::date_misalignment,
                "tightness dates do not overlap the year-over-year inflation dates");
  }
  return gaps;
}

GapSeries quarterly_means(const GapSeries& monthly) {
  std::map<int, std::vector<const GapPoint*>> by_quarter;
  for (const auto& g : monthly) {
    by_quarter[g.date.year * 4 + (g.date.month - 1) / 3].push_back(&g);
  }
  GapSeries quarterly;
  for (const auto& [quarter, points] : by_quarter) {
    if (points.size() != 3) continue;
    double tight = 0.0;
    double infl = 0.0;
    for (const auto* p : points) {
      tight += p->tightness_gap;
      infl += p->inflation_gap;
    }
    const YearMonth first{quarter / 4, (quarter % 4) * 3 + 1};
    quarterly.push_back({first, tight / 3.0, infl / 3.0});
  }
  return quarterly;
}

void write_gaps_csv(std::ostream& out, const GapSeries& gaps) {
  out << "date,tightness_gap,inflation_gap\n";
  for (const auto& g : gaps) {
    out << g.date.to_string() << ',' << format_exact(g.tightness_gap) << ','
        << format_exact(g.inflation_gap) << '\n';
  }
}

GapSeries parse_gaps_csv(std::istream& in, std::string_view source) {
  GapSeries gaps;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view);
    YearMonth date;
    if (!try_parse_date(fields[0], date)) {
      if (gaps.empty() && line_no == 1) continue;
      throw Error(ErrorKind::invalid_series,
                  std::string(source) + ":" + std::to_string(line_no) + ": bad date");
    }
    GapPoint g{date, 0.0, 0.0};
    if (fields.size() < 3 || !parse_double(fields[1], g.tightness_gap) ||
        !parse_double(fields[2], g.inflation_gap)) {
      throw Error(ErrorKind::invalid_series,
                  std::string(source) + ":" + std::to_string(line_no) + ": bad gap values");
    }
    gaps.push_back(g);
  }
  return gaps;
}

GapSeries read_gaps_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_gaps_csv(in, path.string());
}

}  // namespace bpc::io

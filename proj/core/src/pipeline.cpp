#include "epinorm/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include <fmt/format.h>

#include "epinorm/encoding.hpp"
#include "epinorm/epicalendar.hpp"
#include "epinorm/error.hpp"
#include "epinorm/intervals.hpp"

namespace epinorm {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void rethrow_at(const Error& e, std::size_t row, std::string_view column) {
  throw Error(e.code(), fmt::format("row {}, column '{}': {}", row, column, e.what()), row);
}

CaseValue read_value(const DatasetManifest& m, std::string_view cell, std::size_t row, std::string_view column) {
  auto v = trim(cell);
  if (m.is_unknown_marker(v)) return CaseValue::unknown();
  std::uint64_t n = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) {
    throw Error(ErrorCode::InvalidCount,
                fmt::format("row {}, column '{}': '{}' is neither a count nor a declared unknown marker", row, column,
                            cell),
                row);
  }
  return CaseValue::count(n);
}

struct Point {
  CanonicalTimestamp timestamp;
  std::optional<Interval> period;  // set when the cell named a whole reporting period
  CaseValue value;
  std::size_t row;
};

}  // namespace

NormalizeResult normalize(std::string_view bytes, const DatasetManifest& m, const Gazetteer& gazetteer,
                          std::string source_name) {
  require_normalizable(m);
  NormalizeResult result;
  auto& warnings = result.warnings;

  const auto decoded = detect_and_decode(bytes, m.encoding);
  if (!m.encoding && decoded.source_encoding == Encoding::Latin1) warnings.push_back("input transcoded from ISO-8859-1 to UTF-8");
  if (decoded.mixed_newlines()) warnings.push_back("input mixes line-ending styles");

  if (m.layout == Layout::Canonical) {
    result.document = read_canonical(decoded.text, m.container);
    group_series(result.document.observations);  // throws on overlapping intervals
    return result;
  }

  const bool json = m.container == ContainerKind::Json;
  const RawTable table = json ? read_json_table(decoded.text, source_name) : read_csv(decoded.text, source_name);
  auto column = [&](const std::string& name, const char* json_name) {
    const std::string wanted = json ? json_name : name;
    auto c = table.column(wanted);
    if (!c) {
      throw Error(ErrorCode::ShapeMismatch,
                  fmt::format("column '{}' is not in the header ({})", wanted, fmt::join(table.header, ", ")));
    }
    return *c;
  };
  const auto date_col = column(m.date_column, "date");
  const auto value_col = column(m.value_column, "cases");
  const auto loc_col = m.location ? std::optional<std::size_t>{} : std::optional(column(m.location_column, "location"));
  const auto demo_col = m.demographic_column && !json ? std::optional(column(*m.demographic_column, "")) : std::nullopt;

  const DateReader reader(m);
  std::optional<WeekSystem> weeks;
  if (m.week_system == PeriodSystem::Mmwr) weeks = WeekSystem::Mmwr;
  if (m.week_system == PeriodSystem::MondayStart) weeks = WeekSystem::MondayStart;

  std::map<SeriesContext, std::vector<Point>> groups;
  std::set<std::string> extension_codes;
  bool warned_year = false;
  bool warned_zone = false;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const std::size_t row = json ? table.row_lines[r] : r + 1;
    const std::string& date_cell = cells[date_col];

    Point p{CanonicalTimestamp{}, std::nullopt, CaseValue::unknown(), row};
    try {
      std::optional<EpiWeek> labelled;
      if (weeks) {
        try {
          labelled = parse_week_label(trim(date_cell), *weeks);
        } catch (const Error&) {
        }
      }
      if (labelled) {
        p.period = week_interval(*labelled);
        p.timestamp = p.period->start();
      } else {
        p.timestamp = reader.read(date_cell);
        if (weeks) {
          p.period = week_interval(week_of(p.timestamp, *weeks));
        } else if (m.week_system == PeriodSystem::MonthlyScheme) {
          p.period = report_period_of(p.timestamp.date, m.monthly_scheme).to_interval();
        }
      }
    } catch (const Error& e) {
      rethrow_at(e, row, table.header[date_col]);
    }
    if (!warned_year && m.calendar == Calendar::Gregorian && looks_like_buddhist_year(p.timestamp)) {
      warnings.push_back(fmt::format("row {}: year of '{}' looks like a Buddhist Era year; check the calendar", row,
                                     date_cell));
      warned_year = true;
    }
    if (!warned_zone && p.timestamp.precision != Precision::Day && p.timestamp.zone_unknown()) {
      warnings.push_back(fmt::format("row {}: '{}' has a clock time but the zone is unknown", row, date_cell));
      warned_zone = true;
    }

    const std::string& loc_text = loc_col ? cells[*loc_col] : *m.location;
    std::string code;
    try {
      const auto& ref = gazetteer.resolve(trim(loc_text), p.timestamp.date);
      code = ref.code;
      if (ref.extension && extension_codes.insert(code).second) {
        warnings.push_back(fmt::format("'{}' resolves to extension entry {}", loc_text, code));
      }
    } catch (const Error& e) {
      rethrow_at(e, row, loc_col ? table.header[*loc_col] : "location");
    }

    p.value = read_value(m, cells[value_col], row, table.header[value_col]);
    std::string demographic = demo_col ? trim(cells[*demo_col]) : m.demographic;
    if (demographic.empty()) {
      throw Error(ErrorCode::ShapeMismatch, fmt::format("row {}: empty demographic", row), row);
    }
    groups[SeriesContext{code, std::move(demographic), *m.case_type}].push_back(std::move(p));
  }

  auto& doc = result.document;
  doc.metadata.interval_type = m.interval_type;
  doc.metadata.case_definition = m.case_definition;
  doc.metadata.calendar = m.calendar;
  if (m.zone) doc.metadata.zone = m.zone->to_string();
  doc.metadata.source = m.source ? m.source : (source_name.empty() ? std::nullopt : std::optional(source_name));

  for (auto& [ctx, points] : groups) {
    std::stable_sort(points.begin(), points.end(),
                     [](const Point& a, const Point& b) { return a.timestamp.instant() < b.timestamp.instant(); });
    std::vector<Observation> obs;
    if (m.week_system) {
      for (const auto& p : points) obs.push_back({*p.period, ctx.location, ctx.demographic, ctx.case_type, p.value});
    } else {
      std::vector<TimestampedPoint> tp;
      tp.reserve(points.size());
      for (const auto& p : points) tp.push_back({p.timestamp, p.value});
      std::vector<IntervalCount> intervals;
      try {
        intervals = to_interval_series(tp, *m.interval_type, m.period, m.granule);
      } catch (const Error& e) {
        if (e.row() && *e.row() < points.size()) {
          throw Error(e.code(), fmt::format("{} (source row {}, series {})", e.what(), points[*e.row()].row, ctx.location),
                      points[*e.row()].row);
        }
        throw Error(e.code(), fmt::format("{} (series {})", e.what(), ctx.location));
      }
      for (auto& ic : intervals) obs.push_back({ic.interval, ctx.location, ctx.demographic, ctx.case_type, ic.value});
    }
    auto series = TimeSeries::make(ctx, std::move(obs));
    for (const auto& o : series.observations()) doc.observations.push_back(o);
  }
  return result;
}

}  // namespace epinorm

#include "epinorm/epicalendar.hpp"

#include <cstdio>

#include <fmt/format.h>

#include "epinorm/error.hpp"

namespace epinorm {

namespace {

using namespace std::chrono;

weekday start_day(WeekSystem s) { return s == WeekSystem::Mmwr ? Sunday : Monday; }

}  // namespace

std::string_view to_string(WeekSystem s) noexcept { return s == WeekSystem::Mmwr ? "mmwr" : "monday_start"; }

WeekSystem parse_week_system(std::string_view text) {
  if (text == "mmwr") return WeekSystem::Mmwr;
  if (text == "monday_start") return WeekSystem::MondayStart;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown week system '{}'", text));
}

Date first_week_start(int y, WeekSystem system) {
  const Date jan4 = sys_days{year{y} / January / 4};
  return jan4 - (weekday{jan4} - start_day(system));
}

int weeks_in_year(int y, WeekSystem system) {
  return static_cast<int>((first_week_start(y + 1, system) - first_week_start(y, system)).count() / 7);
}

EpiWeek week_of(Date date, WeekSystem system) {
  int y = static_cast<int>(year_month_day{date}.year());
  if (date < first_week_start(y, system)) {
    --y;
  } else if (date >= first_week_start(y + 1, system)) {
    ++y;
  }
  const auto offset = (date - first_week_start(y, system)).count();
  return {system, y, static_cast<int>(offset / 7) + 1};
}

EpiWeek week_of(const CanonicalTimestamp& ts, WeekSystem system) { return week_of(ts.date, system); }

Interval week_interval(const EpiWeek& w) {
  if (w.week < 1 || w.week > weeks_in_year(w.year, w.system)) {
    throw Error(ErrorCode::NoSuchWeek,
                fmt::format("{} has no {} week {}", w.year, to_string(w.system), w.week));
  }
  const Date start = first_week_start(w.year, w.system) + days{7 * (w.week - 1)};
  return Interval(CanonicalTimestamp::from_date(start), CanonicalTimestamp::from_date(start + days{7}));
}

std::string week_label(const EpiWeek& w) { return fmt::format("{:04}, week {:02}", w.year, w.week); }

EpiWeek parse_week_label(std::string_view text, WeekSystem system) {
  int y = 0;
  int wk = 0;
  int consumed = 0;
  const std::string s(text);
  if (std::sscanf(s.c_str(), "%d, week %d%n", &y, &wk, &consumed) != 2 ||
      static_cast<std::size_t>(consumed) != s.size()) {
    throw Error(ErrorCode::UnparseableText, fmt::format("'{}' is not a 'YYYY, week WW' label", text));
  }
  EpiWeek w{system, y, wk};
  week_interval(w);  // range check
  return w;
}

Interval DateRange::to_interval() const {
  return Interval(CanonicalTimestamp::from_date(first), CanonicalTimestamp::from_date(last + std::chrono::days{1}));
}

MonthlyReportScheme::MonthlyReportScheme(std::array<int, 3> cuts) : cuts_(cuts) {
  if (cuts[0] < 1 || cuts[0] >= cuts[1] || cuts[1] >= cuts[2] || cuts[2] > 27) {
    throw Error(ErrorCode::InvalidScheme,
                fmt::format("report cuts [{}, {}, {}] must increase strictly within 1..27", cuts[0], cuts[1],
                            cuts[2]));
  }
}

std::array<DateRange, 4> month_report_intervals(int y, unsigned m, const MonthlyReportScheme& scheme) {
  const year_month ym{year{y}, month{m}};
  if (!ym.ok()) throw Error(ErrorCode::InvalidDate, fmt::format("invalid month {:04}-{:02}", y, m));
  const Date first = sys_days{ym / 1};
  const Date last = sys_days{ym / std::chrono::last};
  const auto& c = scheme.cuts();
  auto day_n = [&](int d) { return first + days{d - 1}; };
  return {DateRange{first, day_n(c[0])}, DateRange{day_n(c[0] + 1), day_n(c[1])},
          DateRange{day_n(c[1] + 1), day_n(c[2])}, DateRange{day_n(c[2] + 1), last}};
}

DateRange report_period_of(Date date, const MonthlyReportScheme& scheme) {
  const year_month_day ymd{date};
  for (const auto& r : month_report_intervals(static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()), scheme)) {
    if (r.contains(date)) return r;
  }
  throw Error(ErrorCode::InvalidDate, "date outside its own month");  // unreachable for valid schemes
}

}  // namespace epinorm

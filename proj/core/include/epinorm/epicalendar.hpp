#pragma once

#include <array>
#include <string>
#include <string_view>

#include "epinorm/intervals.hpp"
#include "epinorm/temporal.hpp"

namespace epinorm {

/// Seven-day reporting week systems. Both number week 1 as the first week
/// holding at least four days of January, i.e. the week containing January 4.
enum class WeekSystem {
  Mmwr,         // Sunday through Saturday (CDC MMWR weeks)
  MondayStart,  // Monday through Sunday
};

std::string_view to_string(WeekSystem s) noexcept;
WeekSystem parse_week_system(std::string_view text);

struct EpiWeek {
  WeekSystem system = WeekSystem::Mmwr;
  int year = 0;
  int week = 0;

  bool operator==(const EpiWeek&) const = default;
};

/// First day of week 1 of `year`.
Date first_week_start(int year, WeekSystem system);
/// 52 or 53.
int weeks_in_year(int year, WeekSystem system);

/// Week containing the calendar date of `ts` (its time of day is ignored).
EpiWeek week_of(const CanonicalTimestamp& ts, WeekSystem system);
EpiWeek week_of(Date date, WeekSystem system);

/// The week as a day-precision [start, start + 7 days) interval. Throws
/// NoSuchWeek for a week number the year does not have.
Interval week_interval(const EpiWeek& week);

/// "2016, week 20".
std::string week_label(const EpiWeek& week);
/// Reads labels in the week_label form back. Throws UnparseableText.
EpiWeek parse_week_label(std::string_view text, WeekSystem system);

/// Closed range of whole days [first, last].
struct DateRange {
  Date first;
  Date last;

  int days() const { return static_cast<int>((last - first).count()) + 1; }
  bool contains(Date d) const { return first <= d && d <= last; }
  /// Equivalent half-open interval [first, last + 1 day).
  Interval to_interval() const;

  bool operator==(const DateRange&) const = default;
};

/// Splits every month into four report periods at fixed day-of-month cuts;
/// the final period always runs to the end of the month. The default cuts
/// (7, 15, 22) reproduce Poland's influenza reporting periods.
class MonthlyReportScheme {
 public:
  MonthlyReportScheme() = default;
  /// Cuts must be strictly increasing and within 1..27 so that every month,
  /// February included, yields four non-empty periods. Throws InvalidScheme.
  explicit MonthlyReportScheme(std::array<int, 3> cuts);

  const std::array<int, 3>& cuts() const noexcept { return cuts_; }
  bool operator==(const MonthlyReportScheme&) const = default;

 private:
  std::array<int, 3> cuts_{7, 15, 22};
};

std::array<DateRange, 4> month_report_intervals(int year, unsigned month,
                                                const MonthlyReportScheme& scheme = MonthlyReportScheme{});
/// Report period containing `date`.
DateRange report_period_of(Date date, const MonthlyReportScheme& scheme = MonthlyReportScheme{});

}  // namespace epinorm

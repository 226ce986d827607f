#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epinorm {

using Date = std::chrono::sys_days;

enum class Precision { Day, Hour, Minute, Second };
enum class Calendar { Gregorian, Buddhist };
enum class DateOrder { DMY, MDY, YMD };
enum class Clock { H12, H24 };

/// Years in the Thai solar (Buddhist Era) calendar run this far ahead of the
/// Gregorian year; month and day are shared.
inline constexpr int kBuddhistEraOffset = 543;

std::string_view to_string(Precision p) noexcept;
std::string_view to_string(Calendar c) noexcept;
std::string_view to_string(DateOrder o) noexcept;
std::string_view to_string(Clock c) noexcept;
Calendar parse_calendar(std::string_view text);
DateOrder parse_date_order(std::string_view text);
Clock parse_clock(std::string_view text);

/// Time zone attached to a timestamp. Unknown is an explicit state, never a
/// stand-in for local time or UTC.
class Zone {
 public:
  enum class Kind { Unknown, Utc, Offset, Named };

  Zone() = default;
  static Zone unknown() { return Zone{}; }
  static Zone utc();
  static Zone offset(int minutes);
  static Zone named(std::string name);

  /// Accepts "UTC", "Z", "+hh:mm", "-hhmm", "+hh", or an IANA-style name.
  static Zone parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool known() const noexcept { return kind_ != Kind::Unknown; }
  int offset_minutes() const noexcept { return offset_minutes_; }
  const std::string& name() const noexcept { return name_; }

  /// Suffix used in ISO 8601 output; empty for unknown.
  std::string suffix() const;
  std::string to_string() const;

  bool operator==(const Zone&) const = default;

 private:
  Kind kind_ = Kind::Unknown;
  int offset_minutes_ = 0;
  std::string name_;
};

/// Signed span of time with second resolution. Calendar units longer than a
/// week (months, years) have no fixed length and are not representable.
struct Duration {
  std::chrono::seconds value{0};

  static Duration days(std::int64_t n) { return {std::chrono::seconds{n * 86400}}; }
  static Duration hours(std::int64_t n) { return {std::chrono::seconds{n * 3600}}; }
  static Duration seconds(std::int64_t n) { return {std::chrono::seconds{n}}; }

  /// ISO 8601 duration subset: PnW, PnD, PnDTnHnMnS and any subset of those.
  static Duration parse(std::string_view text);
  std::string to_iso8601() const;

  bool positive() const noexcept { return value.count() > 0; }
  Duration operator-() const { return {-value}; }
  auto operator<=>(const Duration&) const = default;
};

/// A parsed, unambiguous point in time on the proleptic Gregorian calendar.
///
/// `time_of_day` is wall-clock time in `zone`. Day-precision timestamps carry
/// no time of day and no zone; a zone is only meaningful once there is a clock
/// reading to attach it to. `calendar` records the source calendar the value
/// was converted from and does not change the stored date.
struct CanonicalTimestamp {
  Date date{};
  std::chrono::seconds time_of_day{0};
  Zone zone;
  Calendar calendar = Calendar::Gregorian;
  Precision precision = Precision::Day;

  static CanonicalTimestamp from_date(Date d);
  static CanonicalTimestamp from_ymd(int y, unsigned m, unsigned d);
  /// Minute-precision wall-clock timestamp.
  static CanonicalTimestamp at(Date d, int hour, int minute, Zone zone = {});

  std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{date}; }

  /// Ordering key: wall time shifted to UTC when the offset is known, plain
  /// wall time otherwise.
  std::chrono::sys_seconds instant() const;

  bool zone_unknown() const noexcept { return !zone.known(); }

  /// Shifts by `d`, widening precision when `d` is not a whole multiple of the
  /// current precision unit.
  CanonicalTimestamp plus(Duration d) const;
  CanonicalTimestamp minus(Duration d) const { return plus(-d); }

  /// Returns a copy carrying `z` when this timestamp has a clock reading and no
  /// zone yet; otherwise returns *this unchanged.
  CanonicalTimestamp with_default_zone(const Zone& z) const;

  bool operator==(const CanonicalTimestamp&) const = default;
};

/// Locale conventions that decide how a non-ISO date string is read. All three
/// fields are mandatory: there is no implied default ordering.
struct LocaleHint {
  DateOrder date_order;
  Clock clock;
  Calendar calendar;

  bool operator==(const LocaleHint&) const = default;
};

/// Parses a date or date-time string.
///
/// ISO 8601 calendar dates and date-times (T or a single space as separator,
/// optional Z / numeric offset / [Zone/Name] suffix) parse without a hint.
/// Other layouts are three numeric fields separated by '-', '/' or '.', with a
/// four-digit year and an optional clock reading. Without a hint, a string
/// whose day and month fields could be swapped to yield a different valid date
/// is rejected with AmbiguousDate. Two-digit years are always rejected here;
/// use DatePattern for those sources.
CanonicalTimestamp parse_date(std::string_view text, const std::optional<LocaleHint>& hint = std::nullopt);

/// Strict ISO 8601 reader used for canonical documents and lint checks.
/// Returns nullopt for anything that is not ISO 8601 shaped; throws InvalidDate
/// for ISO-shaped text naming a nonexistent date or time.
std::optional<CanonicalTimestamp> parse_iso8601(std::string_view text);

/// Emits the timestamp at its stored precision. An offset or zone suffix is
/// appended only when the zone is known.
std::string format_iso8601(const CanonicalTimestamp& ts);

/// Parses "YYYY-MM-DD" only.
Date parse_calendar_date(std::string_view text);
std::string format_date(Date d);

/// True for Gregorian-labelled years far enough in the future that the source
/// was probably written in Buddhist Era years. Advisory only.
bool looks_like_buddhist_year(const CanonicalTimestamp& ts);

/// Explicit layout for sources that cannot be read by parse_date alone, such
/// as "10/3/15". Tokens: YYYY, YY, MM, M, DD, D, HH, H (24 hour), hh, h
/// (12 hour), mm, ss, a (AM/PM marker); every other character is literal.
/// Single-letter numeric tokens accept one or two digits.
class DatePattern {
 public:
  /// `two_digit_year_base` is added to YY fields and is required when the
  /// pattern contains YY.
  explicit DatePattern(std::string_view pattern, std::optional<int> two_digit_year_base = std::nullopt);

  CanonicalTimestamp parse(std::string_view text, Calendar calendar = Calendar::Gregorian) const;
  const std::string& pattern() const noexcept { return pattern_; }

 private:
  enum class Field { Year4, Year2, Month, Day, Hour24, Hour12, Minute, Second, Meridiem, Literal };
  struct Token {
    Field field;
    int min_digits = 0;
    int max_digits = 0;
    char literal = 0;
  };

  std::string pattern_;
  std::optional<int> year_base_;
  std::vector<Token> tokens_;
};

}  // namespace epinorm

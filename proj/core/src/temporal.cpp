#include "epinorm/temporal.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <fmt/format.h>

#include "epinorm/error.hpp"

namespace epinorm {

namespace {

using namespace std::chrono;

constexpr std::int64_t kSecondsPerDay = 86400;

[[noreturn]] void unparseable(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::UnparseableText, fmt::format("cannot parse '{}': {}", text, why));
}

[[noreturn]] void invalid_date(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::InvalidDate, fmt::format("invalid date '{}': {}", text, why));
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Minimal forward scanner over the input text.
struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return done() ? '\0' : s[pos]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos;
    return true;
  }
  // Reads between lo and hi digits; returns the value and the count consumed.
  std::optional<std::pair<int, int>> digits(int lo, int hi) {
    int n = 0;
    int value = 0;
    while (n < hi && pos + n < s.size() && is_digit(s[pos + n])) {
      value = value * 10 + (s[pos + n] - '0');
      ++n;
    }
    if (n < lo) return std::nullopt;
    pos += n;
    return std::pair{value, n};
  }
  std::optional<int> fixed(int n) {
    auto r = digits(n, n);
    if (!r) return std::nullopt;
    return r->first;
  }
  void skip_spaces() {
    while (peek() == ' ' || peek() == '\t') ++pos;
  }
};

// Calendar fields as written, before calendar conversion and validation.
struct RawFields {
  int year = 0;
  int month = 0;
  int day = 0;
  int hour = 0;
  int minute = 0;
  int second = 0;
  Precision precision = Precision::Day;
  Zone zone;
};

// Parses an optional "Z" / numeric offset / "[Name]" suffix.
bool scan_zone(Scanner& sc, Zone& zone) {
  if (sc.eat('Z')) {
    zone = Zone::utc();
  } else if (sc.peek() == '+' || sc.peek() == '-') {
    const bool negative = sc.peek() == '-';
    ++sc.pos;
    auto hh = sc.fixed(2);
    if (!hh) return false;
    int mm = 0;
    if (sc.eat(':')) {
      auto m = sc.fixed(2);
      if (!m) return false;
      mm = *m;
    } else if (is_digit(sc.peek())) {
      auto m = sc.fixed(2);
      if (!m) return false;
      mm = *m;
    }
    if (*hh > 23 || mm > 59) return false;
    const int total = *hh * 60 + mm;
    zone = Zone::offset(negative ? -total : total);
  }
  if (sc.peek() == '[') {
    ++sc.pos;
    const auto close = sc.s.find(']', sc.pos);
    if (close == std::string_view::npos) return false;
    auto name = sc.s.substr(sc.pos, close - sc.pos);
    sc.pos = close + 1;
    // A numeric offset, when present, already pins the instant.
    if (!zone.known()) {
      try {
        zone = Zone::named(std::string(name));
      } catch (const Error&) {
        return false;
      }
    }
  }
  return true;
}

std::optional<RawFields> scan_iso(std::string_view text) {
  Scanner sc{text};
  RawFields f;
  auto y = sc.fixed(4);
  if (!y || !sc.eat('-')) return std::nullopt;
  auto m = sc.fixed(2);
  if (!m || !sc.eat('-')) return std::nullopt;
  auto d = sc.fixed(2);
  if (!d) return std::nullopt;
  f.year = *y;
  f.month = *m;
  f.day = *d;
  if (sc.done()) return f;
  if (sc.peek() != 'T' && sc.peek() != ' ') return std::nullopt;
  ++sc.pos;
  auto hh = sc.fixed(2);
  if (!hh) return std::nullopt;
  f.hour = *hh;
  f.precision = Precision::Hour;
  if (sc.eat(':')) {
    auto mm = sc.fixed(2);
    if (!mm) return std::nullopt;
    f.minute = *mm;
    f.precision = Precision::Minute;
    if (sc.eat(':')) {
      auto ss = sc.fixed(2);
      if (!ss) return std::nullopt;
      f.second = *ss;
      f.precision = Precision::Second;
    }
  }
  if (!scan_zone(sc, f.zone) || !sc.done()) return std::nullopt;
  return f;
}

CanonicalTimestamp build(const RawFields& f, Calendar calendar, std::string_view text) {
  int year = f.year;
  if (calendar == Calendar::Buddhist) year -= kBuddhistEraOffset;
  if (year < 1 || year > 9999) invalid_date(text, "year out of range");
  if (f.month < 1 || f.month > 12) invalid_date(text, "month out of range");
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(f.month)},
                           std::chrono::day{static_cast<unsigned>(f.day)}};
  if (!ymd.ok()) invalid_date(text, "day out of range for month");
  if (f.hour > 23 || f.minute > 59 || f.second > 59) invalid_date(text, "time of day out of range");

  CanonicalTimestamp ts;
  ts.date = sys_days{ymd};
  ts.calendar = calendar;
  ts.precision = f.precision;
  if (f.precision != Precision::Day) {
    ts.time_of_day = hours{f.hour} + minutes{f.minute} + std::chrono::seconds{f.second};
    ts.zone = f.zone;
  }
  return ts;
}

bool valid_ymd(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  return year_month_day{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                        std::chrono::day{static_cast<unsigned>(d)}}
      .ok();
}

enum class Meridiem { None, Am, Pm };

Meridiem scan_meridiem(Scanner& sc) {
  auto rest = sc.s.substr(sc.pos);
  std::string lowered;
  for (char c : rest.substr(0, std::min<std::size_t>(rest.size(), 4))) lowered.push_back(lower(c));
  for (auto [tok, value] : {std::pair{"a.m.", Meridiem::Am}, std::pair{"p.m.", Meridiem::Pm},
                            std::pair{"am", Meridiem::Am}, std::pair{"pm", Meridiem::Pm}}) {
    const std::string_view t = tok;
    if (std::string_view(lowered).substr(0, t.size()) == t) {
      sc.pos += t.size();
      return value;
    }
  }
  return Meridiem::None;
}

int apply_meridiem(int hour, Meridiem m, std::string_view text) {
  if (hour < 1 || hour > 12) invalid_date(text, "12-hour clock reading out of range");
  if (m == Meridiem::Am) return hour == 12 ? 0 : hour;
  return hour == 12 ? 12 : hour + 12;
}

// Locale-style text: three numeric fields plus an optional clock reading.
CanonicalTimestamp parse_locale(std::string_view text, const std::optional<LocaleHint>& hint) {
  Scanner sc{text};
  std::array<std::pair<int, int>, 3> fields{};
  char sep = 0;
  for (int i = 0; i < 3; ++i) {
    auto r = sc.digits(1, 8);
    if (!r) unparseable(text, "expected a numeric date field");
    fields[i] = *r;
    if (i < 2) {
      const char c = sc.peek();
      if (c != '-' && c != '/' && c != '.') unparseable(text, "expected a date separator");
      if (sep != 0 && c != sep) unparseable(text, "inconsistent date separators");
      sep = c;
      ++sc.pos;
    }
  }

  RawFields f;
  if (!sc.done()) {
    if (sc.peek() != ' ' && sc.peek() != 'T') unparseable(text, "unexpected trailing text");
    ++sc.pos;
    sc.skip_spaces();
    auto hh = sc.digits(1, 2);
    if (!hh || !sc.eat(':')) unparseable(text, "expected a clock reading h:mm");
    auto mm = sc.fixed(2);
    if (!mm) unparseable(text, "expected minutes");
    f.hour = hh->first;
    f.minute = *mm;
    f.precision = Precision::Minute;
    if (sc.eat(':')) {
      auto ss = sc.fixed(2);
      if (!ss) unparseable(text, "expected seconds");
      f.second = *ss;
      f.precision = Precision::Second;
    }
    const auto before = sc.pos;
    sc.skip_spaces();
    const Meridiem mer = scan_meridiem(sc);
    if (mer == Meridiem::None) sc.pos = before;
    if (mer != Meridiem::None) {
      f.hour = apply_meridiem(f.hour, mer, text);
    } else if (hint && hint->clock == Clock::H12) {
      throw Error(ErrorCode::AmbiguousDate,
                  fmt::format("'{}': 12-hour clock reading without an AM/PM marker", text));
    }
    if (!scan_zone(sc, f.zone) || !sc.done()) unparseable(text, "unexpected trailing text");
  }

  const auto [a, a_len] = fields[0];
  const auto [b, b_len] = fields[1];
  const auto [c, c_len] = fields[2];
  const Calendar calendar = hint ? hint->calendar : Calendar::Gregorian;

  // A leading four-digit field can only be a year, whatever the locale.
  if (a_len == 4 && b_len <= 2 && c_len <= 2) {
    f.year = a;
    f.month = b;
    f.day = c;
    return build(f, calendar, text);
  }
  if (c_len != 4 || a_len > 2 || b_len > 2) {
    if (a_len <= 2 && b_len <= 2 && c_len <= 2) {
      unparseable(text, "two-digit years need an explicit date pattern");
    }
    unparseable(text, "expected a four-digit year in the first or last field");
  }

  f.year = c;
  if (hint) {
    switch (hint->date_order) {
      case DateOrder::DMY: f.day = a; f.month = b; break;
      case DateOrder::MDY: f.month = a; f.day = b; break;
      case DateOrder::YMD: unparseable(text, "year-last text under a year-first locale");
    }
    return build(f, calendar, text);
  }

  const bool mdy_ok = valid_ymd(c, a, b);
  const bool dmy_ok = valid_ymd(c, b, a);
  if (mdy_ok && dmy_ok && a != b) {
    throw Error(ErrorCode::AmbiguousDate,
                fmt::format("'{}' reads as both {:04}-{:02}-{:02} and {:04}-{:02}-{:02}; declare a date order", text,
                            c, a, b, c, b, a));
  }
  if (mdy_ok) {
    f.month = a;
    f.day = b;
  } else if (dmy_ok) {
    f.day = a;
    f.month = b;
  } else {
    invalid_date(text, "no valid day/month reading");
  }
  return build(f, calendar, text);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Precision unit_precision(std::int64_t secs) {
  if (secs % kSecondsPerDay == 0) return Precision::Day;
  if (secs % 3600 == 0) return Precision::Hour;
  if (secs % 60 == 0) return Precision::Minute;
  return Precision::Second;
}

}  // namespace

std::string_view to_string(Precision p) noexcept {
  switch (p) {
    case Precision::Day: return "day";
    case Precision::Hour: return "hour";
    case Precision::Minute: return "minute";
    case Precision::Second: return "second";
  }
  return "day";
}

std::string_view to_string(Calendar c) noexcept { return c == Calendar::Buddhist ? "buddhist" : "gregorian"; }

std::string_view to_string(DateOrder o) noexcept {
  switch (o) {
    case DateOrder::DMY: return "DMY";
    case DateOrder::MDY: return "MDY";
    case DateOrder::YMD: return "YMD";
  }
  return "YMD";
}

std::string_view to_string(Clock c) noexcept { return c == Clock::H12 ? "h12" : "h24"; }

Calendar parse_calendar(std::string_view text) {
  if (text == "gregorian") return Calendar::Gregorian;
  if (text == "buddhist") return Calendar::Buddhist;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown calendar '{}'", text));
}

DateOrder parse_date_order(std::string_view text) {
  if (text == "DMY") return DateOrder::DMY;
  if (text == "MDY") return DateOrder::MDY;
  if (text == "YMD") return DateOrder::YMD;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown date order '{}'", text));
}

Clock parse_clock(std::string_view text) {
  if (text == "h12") return Clock::H12;
  if (text == "h24") return Clock::H24;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown clock '{}'", text));
}

// ---- Zone ----

Zone Zone::utc() {
  Zone z;
  z.kind_ = Kind::Utc;
  return z;
}

Zone Zone::offset(int minutes) {
  if (minutes <= -24 * 60 || minutes >= 24 * 60) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("zone offset {} minutes out of range", minutes));
  }
  Zone z;
  z.kind_ = Kind::Offset;
  z.offset_minutes_ = minutes;
  return z;
}

Zone Zone::named(std::string name) {
  const bool ok = !name.empty() && std::isalpha(static_cast<unsigned char>(name.front())) &&
                  std::all_of(name.begin(), name.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '/' || c == '-' ||
                           c == '+';
                  });
  if (!ok) throw Error(ErrorCode::InvalidArgument, fmt::format("invalid zone name '{}'", name));
  Zone z;
  z.kind_ = Kind::Named;
  z.name_ = std::move(name);
  return z;
}

Zone Zone::parse(std::string_view text) {
  if (text == "Z" || text == "UTC" || text == "utc") return utc();
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    Scanner sc{text};
    Zone z;
    if (!scan_zone(sc, z) || !sc.done() || !z.known()) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("invalid zone offset '{}'", text));
    }
    return z;
  }
  // IANA names: "Area/Location" style, no tz database lookup
  const bool shaped = !text.empty() && text.front() != '/' && text.back() != '/' &&
                      std::all_of(text.begin(), text.end(), [](char c) {
                        return std::isalnum(static_cast<unsigned char>(c)) || c == '/' || c == '_' || c == '-' ||
                               c == '+';
                      });
  if (!shaped) throw Error(ErrorCode::InvalidArgument, fmt::format("invalid zone name '{}'", text));
  return named(std::string(text));
}

std::string Zone::suffix() const {
  switch (kind_) {
    case Kind::Unknown: return {};
    case Kind::Utc: return "Z";
    case Kind::Offset: {
      const int a = offset_minutes_ < 0 ? -offset_minutes_ : offset_minutes_;
      return fmt::format("{}{:02}:{:02}", offset_minutes_ < 0 ? '-' : '+', a / 60, a % 60);
    }
    case Kind::Named: return "[" + name_ + "]";
  }
  return {};
}

std::string Zone::to_string() const {
  switch (kind_) {
    case Kind::Unknown: return "unknown";
    case Kind::Utc: return "UTC";
    case Kind::Offset: return suffix();
    case Kind::Named: return name_;
  }
  return "unknown";
}

// ---- Duration ----

Duration Duration::parse(std::string_view text) {
  Scanner sc{text};
  if (!sc.eat('P')) unparseable(text, "durations start with 'P'");
  std::int64_t total = 0;
  bool any = false;
  bool in_time = false;
  while (!sc.done()) {
    if (sc.eat('T')) {
      if (in_time) unparseable(text, "repeated 'T'");
      in_time = true;
      continue;
    }
    auto n = sc.digits(1, 9);
    if (!n) unparseable(text, "expected a number");
    const char unit = sc.peek();
    ++sc.pos;
    std::int64_t scale = 0;
    if (!in_time) {
      if (unit == 'W') scale = 7 * kSecondsPerDay;
      else if (unit == 'D') scale = kSecondsPerDay;
      else if (unit == 'Y' || unit == 'M') unparseable(text, "years and months have no fixed length");
    } else {
      if (unit == 'H') scale = 3600;
      else if (unit == 'M') scale = 60;
      else if (unit == 'S') scale = 1;
    }
    if (scale == 0) unparseable(text, "unknown duration unit");
    total += n->first * scale;
    any = true;
  }
  if (!any) unparseable(text, "empty duration");
  return {std::chrono::seconds{total}};
}

std::string Duration::to_iso8601() const {
  std::int64_t s = value.count();
  std::string out = s < 0 ? "-P" : "P";
  if (s < 0) s = -s;
  if (s == 0) return "PT0S";
  const auto days = s / kSecondsPerDay;
  s %= kSecondsPerDay;
  if (days) out += fmt::format("{}D", days);
  if (s) {
    out += 'T';
    if (s / 3600) out += fmt::format("{}H", s / 3600);
    if ((s % 3600) / 60) out += fmt::format("{}M", (s % 3600) / 60);
    if (s % 60) out += fmt::format("{}S", s % 60);
  }
  return out;
}

// ---- CanonicalTimestamp ----

CanonicalTimestamp CanonicalTimestamp::from_date(Date d) {
  CanonicalTimestamp ts;
  ts.date = d;
  return ts;
}

CanonicalTimestamp CanonicalTimestamp::from_ymd(int y, unsigned m, unsigned d) {
  const year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw Error(ErrorCode::InvalidDate, fmt::format("invalid date {:04}-{:02}-{:02}", y, m, d));
  return from_date(sys_days{ymd});
}

CanonicalTimestamp CanonicalTimestamp::at(Date d, int hour, int minute, Zone zone) {
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59) {
    throw Error(ErrorCode::InvalidDate, fmt::format("invalid time {:02}:{:02}", hour, minute));
  }
  CanonicalTimestamp ts;
  ts.date = d;
  ts.time_of_day = hours{hour} + minutes{minute};
  ts.zone = std::move(zone);
  ts.precision = Precision::Minute;
  return ts;
}

sys_seconds CanonicalTimestamp::instant() const {
  sys_seconds local = sys_seconds{date} + time_of_day;
  if (zone.kind() == Zone::Kind::Offset) local -= minutes{zone.offset_minutes()};
  return local;
}

CanonicalTimestamp CanonicalTimestamp::plus(Duration d) const {
  const std::int64_t local = (sys_seconds{date} + time_of_day).time_since_epoch().count() + d.value.count();
  std::int64_t day = local / kSecondsPerDay;
  std::int64_t rem = local % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --day;
  }
  CanonicalTimestamp out = *this;
  out.date = Date{std::chrono::days{day}};
  out.time_of_day = std::chrono::seconds{rem};
  out.precision = std::max(precision, unit_precision(d.value.count()));
  return out;
}

CanonicalTimestamp CanonicalTimestamp::with_default_zone(const Zone& z) const {
  if (precision == Precision::Day || zone.known()) return *this;
  CanonicalTimestamp out = *this;
  out.zone = z;
  return out;
}

// ---- parsing / formatting ----

std::optional<CanonicalTimestamp> parse_iso8601(std::string_view text) {
  auto raw = scan_iso(text);
  if (!raw) return std::nullopt;
  return build(*raw, Calendar::Gregorian, text);
}

CanonicalTimestamp parse_date(std::string_view text, const std::optional<LocaleHint>& hint) {
  const auto trimmed = trim(text);
  if (trimmed.empty()) unparseable(text, "empty date text");
  if (auto raw = scan_iso(trimmed)) {
    return build(*raw, hint ? hint->calendar : Calendar::Gregorian, trimmed);
  }
  return parse_locale(trimmed, hint);
}

std::string format_iso8601(const CanonicalTimestamp& ts) {
  const auto ymd = ts.ymd();
  std::string out = fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                                static_cast<unsigned>(ymd.day()));
  if (ts.precision == Precision::Day) return out;
  const auto secs = ts.time_of_day.count();
  out += fmt::format("T{:02}", secs / 3600);
  if (ts.precision >= Precision::Minute) out += fmt::format(":{:02}", (secs % 3600) / 60);
  if (ts.precision == Precision::Second) out += fmt::format(":{:02}", secs % 60);
  out += ts.zone.suffix();
  return out;
}

Date parse_calendar_date(std::string_view text) {
  auto ts = parse_iso8601(trim(text));
  if (!ts || ts->precision != Precision::Day) unparseable(text, "expected YYYY-MM-DD");
  return ts->date;
}

std::string format_date(Date d) { return format_iso8601(CanonicalTimestamp::from_date(d)); }

bool looks_like_buddhist_year(const CanonicalTimestamp& ts) {
  return ts.calendar == Calendar::Gregorian && static_cast<int>(ts.ymd().year()) > 2400;
}

// ---- DatePattern ----

DatePattern::DatePattern(std::string_view pattern, std::optional<int> two_digit_year_base)
    : pattern_(pattern), year_base_(two_digit_year_base) {
  struct Spec {
    std::string_view text;
    Field field;
    int lo;
    int hi;
  };
  static constexpr Spec kSpecs[] = {
      {"YYYY", Field::Year4, 4, 4}, {"YY", Field::Year2, 2, 2},   {"MM", Field::Month, 2, 2},
      {"M", Field::Month, 1, 2},    {"DD", Field::Day, 2, 2},     {"D", Field::Day, 1, 2},
      {"HH", Field::Hour24, 2, 2},  {"H", Field::Hour24, 1, 2},   {"hh", Field::Hour12, 2, 2},
      {"h", Field::Hour12, 1, 2},   {"mm", Field::Minute, 2, 2},  {"ss", Field::Second, 2, 2},
      {"a", Field::Meridiem, 0, 0},
  };
  std::size_t i = 0;
  while (i < pattern.size()) {
    bool matched = false;
    for (const auto& spec : kSpecs) {
      if (pattern.substr(i, spec.text.size()) == spec.text) {
        tokens_.push_back({spec.field, spec.lo, spec.hi, 0});
        i += spec.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) tokens_.push_back({Field::Literal, 0, 0, pattern[i++]});
  }
  auto has = [&](Field f) {
    return std::any_of(tokens_.begin(), tokens_.end(), [f](const Token& t) { return t.field == f; });
  };
  auto fail = [&](std::string_view why) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("date pattern '{}': {}", pattern, why));
  };
  if (!(has(Field::Year4) || has(Field::Year2)) || !has(Field::Month) || !has(Field::Day)) {
    fail("needs year, month and day fields");
  }
  if (has(Field::Year2) && !year_base_) fail("YY requires a two-digit year base");
  if (has(Field::Hour12) && !has(Field::Meridiem)) fail("12-hour fields require an 'a' marker");
  if (has(Field::Hour12) && has(Field::Hour24)) fail("mixes 12- and 24-hour fields");
  if ((has(Field::Minute) || has(Field::Second)) && !(has(Field::Hour12) || has(Field::Hour24))) {
    fail("minutes without hours");
  }
  if (has(Field::Second) && !has(Field::Minute)) fail("seconds without minutes");
}

CanonicalTimestamp DatePattern::parse(std::string_view text, Calendar calendar) const {
  const auto trimmed = trim(text);
  Scanner sc{trimmed};
  RawFields f;
  int hour12 = -1;
  Meridiem mer = Meridiem::None;
  for (const auto& tok : tokens_) {
    if (tok.field == Field::Literal) {
      if (!sc.eat(tok.literal)) {
        unparseable(text, fmt::format("does not match pattern '{}'", pattern_));
      }
      continue;
    }
    if (tok.field == Field::Meridiem) {
      mer = scan_meridiem(sc);
      if (mer == Meridiem::None) unparseable(text, "expected AM or PM");
      continue;
    }
    auto n = sc.digits(tok.min_digits, tok.max_digits);
    if (!n) unparseable(text, fmt::format("does not match pattern '{}'", pattern_));
    switch (tok.field) {
      case Field::Year4: f.year = n->first; break;
      case Field::Year2: f.year = *year_base_ + n->first; break;
      case Field::Month: f.month = n->first; break;
      case Field::Day: f.day = n->first; break;
      case Field::Hour24:
        f.hour = n->first;
        f.precision = std::max(f.precision, Precision::Hour);
        break;
      case Field::Hour12:
        hour12 = n->first;
        f.precision = std::max(f.precision, Precision::Hour);
        break;
      case Field::Minute:
        f.minute = n->first;
        f.precision = std::max(f.precision, Precision::Minute);
        break;
      case Field::Second:
        f.second = n->first;
        f.precision = std::max(f.precision, Precision::Second);
        break;
      default: break;
    }
  }
  if (hour12 >= 0) f.hour = apply_meridiem(hour12, mer, text);
  if (f.precision != Precision::Day) {
    if (!scan_zone(sc, f.zone)) unparseable(text, "malformed zone suffix");
  }
  if (!sc.done()) unparseable(text, fmt::format("trailing text after pattern '{}'", pattern_));
  return build(f, calendar, text);
}

}  // namespace epinorm

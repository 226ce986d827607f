#pragma once

// Shared helpers for the test binaries: fixture access, independent oracles
// that do not call into the library, and seeded generators.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "epinorm/containers.hpp"
#include "epinorm/temporal.hpp"

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(EPINORM_FIXTURES) / name; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("epinorm-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

 private:
  std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// Civil calendar oracle: plain month-length arithmetic and Zeller's
// congruence, no std::chrono.

namespace oracle {

struct Ymd {
  int y, m, d;
  bool operator==(const Ymd&) const = default;
  auto operator<=>(const Ymd&) const = default;
};

inline bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int month_length(int y, int m) {
  static const int len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : len[m - 1];
}

inline bool valid(int y, int m, int d) { return m >= 1 && m <= 12 && d >= 1 && d <= month_length(y, m); }

inline Ymd next(Ymd t) {
  if (++t.d > month_length(t.y, t.m)) {
    t.d = 1;
    if (++t.m > 12) {
      t.m = 1;
      ++t.y;
    }
  }
  return t;
}

inline Ymd prev(Ymd t) {
  if (--t.d < 1) {
    if (--t.m < 1) {
      t.m = 12;
      --t.y;
    }
    t.d = month_length(t.y, t.m);
  }
  return t;
}

inline Ymd add_days(Ymd t, int n) {
  for (; n > 0; --n) t = next(t);
  for (; n < 0; ++n) t = prev(t);
  return t;
}

/// 0 = Sunday ... 6 = Saturday.
inline int weekday(Ymd t) {
  int m = t.m, y = t.y;
  if (m < 3) {
    m += 12;
    --y;
  }
  int k = y % 100, j = y / 100;
  int h = (t.d + 13 * (m + 1) / 5 + k + k / 4 + j / 4 + 5 * j) % 7;  // 0 = Saturday
  return (h + 6) % 7;
}

inline std::string iso(Ymd t) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", t.y, t.m, t.d);
  return buf;
}

/// First day of week 1: the earliest week (starting on `first_dow`) holding
/// at least four January days of `year`, found by trying each candidate.
inline Ymd week_one_start(int year, int first_dow) {
  Ymd s{year - 1, 12, 25};
  while (true) {
    if (weekday(s) == first_dow) {
      int january = 0;
      Ymd t = s;
      for (int i = 0; i < 7; ++i, t = next(t)) january += (t.y == year && t.m == 1);
      if (january >= 4) return s;
    }
    s = next(s);
  }
}

/// Walks every day of [from, to] and labels it with (year, week), restarting
/// the count at each year's week-1 start and bumping it on each week start.
inline std::map<Ymd, std::pair<int, int>> week_walk(Ymd from, Ymd to, int first_dow) {
  std::map<Ymd, std::pair<int, int>> out;
  std::map<Ymd, int> resets;
  for (int y = from.y - 1; y <= to.y + 1; ++y) resets[week_one_start(y, first_dow)] = y;
  Ymd t = add_days(from, -400);
  int year = 0, week = 0;
  for (; t <= to; t = next(t)) {
    if (auto it = resets.find(t); it != resets.end()) {
      year = it->second;
      week = 1;
    } else if (weekday(t) == first_dow) {
      ++week;
    }
    if (t >= from) out[t] = {year, week};
  }
  return out;
}

/// Buddhist Era year for a Common Era year, read off a table built by counting
/// forward from the documented anchor (BE 2561 = CE 2018).
inline std::map<int, int> buddhist_table(int from_ce, int to_ce) {
  std::map<int, int> t;
  int be = 2561;
  for (int ce = 2018; ce <= to_ce; ++ce, ++be) t[ce] = be;
  be = 2561;
  for (int ce = 2018; ce >= from_ce; --ce, --be) t[ce] = be;
  return t;
}

/// True when `d` is the double nearest to cases * 100000 / population, checked
/// with exact integer arithmetic: |N - P*M*2^E| <= P*2^(E-1) for d = M*2^E.
inline bool correctly_rounded_rate(double d, std::uint64_t cases, std::uint64_t population) {
  using i128 = __int128;
  const i128 n = static_cast<i128>(cases) * 100000;
  const i128 p = population;
  if (n == 0) return d == 0.0;
  int e = 0;
  double frac = std::frexp(d, &e);  // d = frac * 2^e, frac in [0.5, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(frac, 53));
  e -= 53;  // d = m * 2^e exactly
  if (e >= 0) {
    i128 scaled = static_cast<i128>(m) << e;
    i128 diff = n - p * scaled;
    if (diff < 0) diff = -diff;
    return 2 * diff <= (p << e);
  }
  const int s = 1 - e;  // multiply both sides by 2^(1-e)
  if (s > 60) return false;
  i128 lhs = (n << s) - 2 * p * m;
  if (lhs < 0) lhs = -lhs;
  return lhs <= p;
}

/// Decimal expansion of num/den to `digits` places by long division.
inline std::string long_division(std::uint64_t num, std::uint64_t den, int digits) {
  std::string out = std::to_string(num / den) + ".";
  std::uint64_t r = num % den;
  for (int i = 0; i < digits; ++i) {
    r *= 10;
    out.push_back(static_cast<char>('0' + r / den));
    r %= den;
  }
  return out;
}

}  // namespace oracle

// ---------------------------------------------------------------------------
// Generators

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline epinorm::Date random_date(Rng& rng, int y0 = 1990, int y1 = 2030) {
  using namespace std::chrono;
  int y = uniform(rng, y0, y1), m = uniform(rng, 1, 12);
  int d = uniform(rng, 1, oracle::month_length(y, m));
  return sys_days{year{y} / month{static_cast<unsigned>(m)} / day{static_cast<unsigned>(d)}};
}

inline epinorm::Zone random_zone(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return epinorm::Zone::unknown();
    case 1: return epinorm::Zone::utc();
    case 2: return epinorm::Zone::offset(uniform(rng, -14 * 4, 14 * 4) * 15);
    default: {
      static const char* names[] = {"Europe/Zurich", "America/Chicago", "Asia/Bangkok", "Africa/Juba"};
      return epinorm::Zone::named(names[uniform(rng, 0, 3)]);
    }
  }
}

/// Any timestamp at any precision; day precision never carries a zone.
inline epinorm::CanonicalTimestamp random_timestamp(Rng& rng) {
  using namespace epinorm;
  CanonicalTimestamp ts = CanonicalTimestamp::from_date(random_date(rng));
  auto p = static_cast<Precision>(uniform(rng, 0, 3));
  if (p == Precision::Day) return ts;
  ts.precision = p;
  int h = uniform(rng, 0, 23);
  int mi = p == Precision::Hour ? 0 : uniform(rng, 0, 59);
  int s = p == Precision::Second ? uniform(rng, 0, 59) : 0;
  ts.time_of_day = std::chrono::seconds{h * 3600 + mi * 60 + s};
  ts.zone = random_zone(rng);
  return ts;
}

inline epinorm::CaseValue random_value(Rng& rng) {
  int k = uniform(rng, 0, 9);
  if (k == 0) return epinorm::CaseValue::unknown();
  if (k == 1) return epinorm::CaseValue::count(0);
  if (k == 2) return epinorm::CaseValue::count(std::uniform_int_distribution<std::uint64_t>()(rng) >> 1);
  return epinorm::CaseValue::count(static_cast<std::uint64_t>(uniform(rng, 1, 5000)));
}

inline std::string random_text(Rng& rng, bool allow_special) {
  static const std::vector<std::string> pieces = {"a", "Z", "0", " ", "-", "ü", "ß", "Ł", "日本", "é", "_"};
  static const std::vector<std::string> special = {",", "\"", "\n", "#", "\r\n", " "};
  std::string s;
  int n = uniform(rng, 1, 8);
  for (int i = 0; i < n; ++i) {
    if (allow_special && uniform(rng, 0, 5) == 0) {
      s += special[uniform(rng, 0, static_cast<int>(special.size()) - 1)];
    } else {
      s += pieces[uniform(rng, 0, static_cast<int>(pieces.size()) - 1)];
    }
  }
  return s;
}

inline epinorm::CaseType random_case_type(Rng& rng) {
  using epinorm::CaseType;
  switch (uniform(rng, 0, 4)) {
    case 0: return {CaseType::Kind::Confirmed, {}};
    case 1: return {CaseType::Kind::Suspected, {}};
    case 2: return {CaseType::Kind::Hospitalizations, {}};
    case 3: return {CaseType::Kind::Deaths, {}};
    default: return {CaseType::Kind::Combined, "confirmed+suspected"};
  }
}

/// A document that satisfies every canonical constraint; free-text fields may
/// hold delimiters, quotes and newlines.
inline epinorm::CanonicalDocument random_document(Rng& rng) {
  using namespace epinorm;
  CanonicalDocument doc;
  doc.metadata.interval_type = static_cast<IntervalType>(uniform(rng, 0, 2));
  doc.metadata.case_definition = "def " + random_text(rng, true);
  doc.metadata.calendar = uniform(rng, 0, 1) ? Calendar::Gregorian : Calendar::Buddhist;
  if (uniform(rng, 0, 1)) doc.metadata.zone = "UTC";
  if (uniform(rng, 0, 1)) doc.metadata.source = random_text(rng, true);
  int n = uniform(rng, 0, 12);
  for (int i = 0; i < n; ++i) {
    auto start = random_timestamp(rng);
    auto end = start.plus(Duration::seconds(uniform(rng, 1, 40) * 86400 + (start.precision == Precision::Day ? 0 : uniform(rng, 0, 3600))));
    doc.observations.push_back(Observation{Interval(start, end), uniform(rng, 0, 1) ? "US" : random_text(rng, true),
                                           "grp " + random_text(rng, true), random_case_type(rng),
                                           random_value(rng)});
  }
  return doc;
}

}  // namespace testsupport

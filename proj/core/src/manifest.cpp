#include "epinorm/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "epinorm/error.hpp"
#include "epinorm/store.hpp"

namespace epinorm {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorCode::ManifestInvalid, message); }

const std::set<std::string> kKeys = {
    "container",    "layout",          "encoding",        "date_format",   "calendar",      "zone",
    "interval_type", "period",         "granule",         "week_system",   "monthly_cuts",  "date_column",
    "location_column", "location",     "value_column",    "demographic_column", "demographic", "gazetteer",
    "case_type",    "case_definition", "unknown_markers", "source",
};

const std::set<std::string> kDateFormatKeys = {"pattern", "two_digit_year_base", "order", "clock"};

std::string get_string(const json& obj, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) invalid(fmt::format("'{}' must be a string", key));
  return v.get<std::string>();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool parses_as_integer(std::string_view s) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty()) return false;
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  return ec == std::errc{} && p == t.data() + t.size();
}

// Runs `fn`, turning library errors into ManifestInvalid naming the key.
template <class Fn>
auto field(const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ManifestInvalid) throw;
    invalid(fmt::format("'{}': {}", key, e.what()));
  }
}

DateFormat parse_date_format(const json& v) {
  if (!v.is_object()) invalid("'date_format' must be an object");
  for (const auto& [k, _] : v.items()) {
    if (!kDateFormatKeys.count(k)) invalid(fmt::format("unknown key 'date_format.{}'", k));
  }
  DateFormat f;
  if (v.contains("pattern")) f.pattern = get_string(v, "pattern");
  if (v.contains("two_digit_year_base")) {
    const auto& b = v.at("two_digit_year_base");
    if (!b.is_number_integer()) invalid("'date_format.two_digit_year_base' must be an integer");
    f.two_digit_year_base = b.get<int>();
  }
  if (v.contains("order")) f.order = field("date_format.order", [&] { return parse_date_order(get_string(v, "order")); });
  if (v.contains("clock")) f.clock = field("date_format.clock", [&] { return parse_clock(get_string(v, "clock")); });
  if (f.pattern) {
    field("date_format.pattern", [&] {
      DatePattern p(*f.pattern, f.two_digit_year_base);
      return 0;
    });
  } else if (!f.order || !f.clock) {
    invalid("'date_format' needs either a pattern or both order and clock");
  }
  return f;
}

}  // namespace

bool DatasetManifest::is_unknown_marker(std::string_view cell) const {
  std::string t = trim(cell);
  if (t == kUnknownToken) return true;
  return std::find(unknown_markers.begin(), unknown_markers.end(), t) != unknown_markers.end();
}

DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(fmt::format("manifest is not valid JSON: {}", e.what()));
  }
  if (!doc.is_object()) invalid("manifest must be a JSON object");
  for (const auto& [k, _] : doc.items()) {
    if (!kKeys.count(k)) invalid(fmt::format("unknown manifest key '{}'", k));
  }
  if (!doc.contains("container")) invalid("manifest must declare 'container'");

  DatasetManifest m;
  m.container = field("container", [&] { return parse_container_kind(get_string(doc, "container")); });
  if (doc.contains("layout")) {
    auto s = get_string(doc, "layout");
    if (s == "table") {
      m.layout = Layout::Table;
    } else if (s == "canonical") {
      m.layout = Layout::Canonical;
    } else {
      invalid(fmt::format("'layout' must be table or canonical, got '{}'", s));
    }
  }
  if (doc.contains("encoding")) m.encoding = field("encoding", [&] { return parse_encoding_name(get_string(doc, "encoding")); });
  if (doc.contains("date_format")) m.date_format = parse_date_format(doc.at("date_format"));
  if (doc.contains("calendar")) m.calendar = field("calendar", [&] { return parse_calendar(get_string(doc, "calendar")); });
  if (doc.contains("zone")) {
    m.zone = field("zone", [&] { return Zone::parse(get_string(doc, "zone")); });
    if (!m.zone->known()) invalid("'zone' must name a zone");
  }
  if (doc.contains("interval_type")) {
    m.interval_type = field("interval_type", [&] { return parse_interval_type(get_string(doc, "interval_type")); });
  }
  if (doc.contains("period")) {
    m.period = field("period", [&] { return Duration::parse(get_string(doc, "period")); });
    if (!m.period->positive()) invalid("'period' must be positive");
  }
  if (doc.contains("granule")) {
    m.granule = field("granule", [&] { return Duration::parse(get_string(doc, "granule")); });
    if (!m.granule.positive()) invalid("'granule' must be positive");
  }
  if (doc.contains("week_system")) {
    auto s = get_string(doc, "week_system");
    if (s == "mmwr") {
      m.week_system = PeriodSystem::Mmwr;
    } else if (s == "monday_start") {
      m.week_system = PeriodSystem::MondayStart;
    } else if (s == "monthly_scheme") {
      m.week_system = PeriodSystem::MonthlyScheme;
    } else {
      invalid(fmt::format("'week_system' must be mmwr, monday_start or monthly_scheme, got '{}'", s));
    }
  }
  if (doc.contains("monthly_cuts")) {
    const auto& c = doc.at("monthly_cuts");
    if (!c.is_array() || c.size() != 3 || !std::all_of(c.begin(), c.end(), [](const json& x) { return x.is_number_integer(); })) {
      invalid("'monthly_cuts' must be an array of three integers");
    }
    m.monthly_scheme = field("monthly_cuts", [&] {
      return MonthlyReportScheme({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
    });
  }

  if (doc.contains("date_column")) m.date_column = get_string(doc, "date_column");
  if (doc.contains("location_column")) m.location_column = get_string(doc, "location_column");
  if (doc.contains("location")) m.location = get_string(doc, "location");
  if (doc.contains("value_column")) m.value_column = get_string(doc, "value_column");
  if (doc.contains("demographic_column")) m.demographic_column = get_string(doc, "demographic_column");
  if (doc.contains("demographic")) m.demographic = get_string(doc, "demographic");
  if (m.demographic.empty()) invalid("'demographic' must not be empty");

  if (doc.contains("gazetteer")) {
    std::filesystem::path p = get_string(doc, "gazetteer");
    m.gazetteer = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (doc.contains("case_type")) m.case_type = field("case_type", [&] { return CaseType::parse(get_string(doc, "case_type")); });
  if (doc.contains("case_definition")) m.case_definition = get_string(doc, "case_definition");
  if (doc.contains("unknown_markers")) {
    const auto& u = doc.at("unknown_markers");
    if (!u.is_array()) invalid("'unknown_markers' must be an array of strings");
    for (const auto& x : u) {
      if (!x.is_string()) invalid("'unknown_markers' must be an array of strings");
      std::string s = trim(x.get<std::string>());
      if (s.empty()) invalid("an unknown marker must not be blank");
      if (parses_as_integer(s)) invalid(fmt::format("unknown marker '{}' reads as a count", s));
      m.unknown_markers.push_back(std::move(s));
    }
  }
  if (doc.contains("source")) m.source = get_string(doc, "source");

  if (m.calendar == Calendar::Buddhist && !m.date_format) {
    invalid("a Buddhist-calendar source needs a 'date_format'");
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    invalid(e.what());
  }
  return parse_manifest(text, path.parent_path());
}

void require_normalizable(const DatasetManifest& m) {
  if (m.layout == Layout::Canonical) return;  // the document carries its own metadata
  if (!m.interval_type) invalid("manifest must declare 'interval_type' (leading, trailing_exclusive, trailing_inclusive)");
  if (!m.case_type) invalid("manifest must declare 'case_type'");
  if (!m.case_definition || trim(*m.case_definition).empty()) invalid("manifest must declare a non-blank 'case_definition'");
}

DateReader::DateReader(const DatasetManifest& m) : calendar_(m.calendar), zone_(m.zone) {
  if (m.date_format && m.date_format->pattern) {
    pattern_.emplace(*m.date_format->pattern, m.date_format->two_digit_year_base);
  } else if (m.date_format) {
    hint_ = LocaleHint{*m.date_format->order, *m.date_format->clock, m.calendar};
  }
}

CanonicalTimestamp DateReader::read(std::string_view cell) const {
  std::string text = trim(cell);
  CanonicalTimestamp ts = pattern_ ? pattern_->parse(text, calendar_) : parse_date(text, hint_);
  return zone_ ? ts.with_default_zone(*zone_) : ts;
}

}  // namespace epinorm

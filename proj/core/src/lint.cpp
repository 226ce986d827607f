#include "epinorm/lint.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "epinorm/containers.hpp"
#include "epinorm/encoding.hpp"
#include "epinorm/error.hpp"

namespace epinorm {

namespace {

using nlohmann::ordered_json;

constexpr LintRule kRules[] = {
    {RuleId::Container, "R-CONTAINER", Severity::Error, 0, "container can be read with the declared layout"},
    {RuleId::Utf8, "R-UTF8", Severity::Error, 6, "byte stream is valid UTF-8"},
    {RuleId::Iso8601, "R-ISO8601", Severity::Error, 3, "every timestamp is ISO 8601"},
    {RuleId::Tz, "R-TZ", Severity::Warning, 3, "clock readings carry a zone or offset"},
    {RuleId::Interval, "R-INTERVAL", Severity::Error, 4, "interval type is declared"},
    {RuleId::Iso3166, "R-ISO3166", Severity::Warning, 5, "locations resolve to ISO 3166 codes"},
    {RuleId::CaseDef, "R-CASEDEF", Severity::Error, 8, "case definition is present"},
    {RuleId::Unknown, "R-UNKNOWN", Severity::Error, 9, "count cells hold a count or an explicit unknown"},
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool is_count(std::string_view s) {
  if (s.empty()) return false;
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && p == s.data() + s.size();
}

struct CellRef {
  std::size_t index = 0;
  std::string column;
  std::string text;
};

/// One data row reduced to the cells lint cares about.
struct RowView {
  std::size_t row = 0;
  std::vector<CellRef> timestamps;
  std::optional<CellRef> location;
  std::optional<CellRef> value;
};

class Linter {
 public:
  Linter(const DatasetManifest& m, const Gazetteer& g, std::string file) : m_(m), g_(g) { report_.file = std::move(file); }

  LintReport run(std::string_view bytes) {
    if (auto off = first_invalid_utf8(bytes)) {
      auto line = 1 + std::count(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(*off), '\n');
      add(RuleId::Utf8, 0, "", 0,
          fmt::format("byte 0x{:02X} at offset {} (line {}) is not valid UTF-8",
                      static_cast<unsigned char>(bytes[*off]), *off, line));
    }
    DecodedText decoded;
    try {
      decoded = detect_and_decode(bytes, m_.encoding);
    } catch (const Error&) {
      decoded = detect_and_decode(bytes);
    }
    const auto text = normalize_newlines(decoded.text).first;

    if (m_.layout == Layout::Table) {
      table(text);
    } else if (m_.container == ContainerKind::Csv) {
      canonical_csv(text);
    } else {
      canonical_json(text);
    }
    std::stable_sort(report_.findings.begin(), report_.findings.end(), [](const Finding& a, const Finding& b) {
      return std::tie(a.locus.row, a.locus.column_index, a.rule) < std::tie(b.locus.row, b.locus.column_index, b.rule);
    });
    return std::move(report_);
  }

 private:
  void add(RuleId id, std::size_t row, std::string column, std::size_t column_index, std::string message) {
    report_.findings.push_back(
        {id, rule(id).severity, Locus{report_.file, row, std::move(column), column_index}, std::move(message)});
  }

  void container_error(const Error& e) {
    add(RuleId::Container, e.row().value_or(0), "", 0, fmt::format("{}: {}", error_code_name(e.code()), e.what()));
  }

  void check_interval_type(bool declared, const std::string& where) {
    if (!declared) add(RuleId::Interval, 0, "interval_type", 0, fmt::format("{} does not declare an interval type", where));
  }

  void check_case_definition(const std::optional<std::string>& def, const std::string& where) {
    if (!def || trim(*def).empty()) {
      add(RuleId::CaseDef, 0, "case_definition", 0, fmt::format("{} has no case definition", where));
    }
  }

  std::optional<Date> check_timestamp(std::size_t row, const CellRef& c, bool zone_declared) {
    auto text = trim(c.text);
    std::optional<CanonicalTimestamp> ts;
    try {
      ts = parse_iso8601(text);
    } catch (const Error& e) {
      add(RuleId::Iso8601, row, c.column, c.index, fmt::format("'{}' is not a valid date: {}", c.text, e.what()));
      return std::nullopt;
    }
    if (!ts) {
      add(RuleId::Iso8601, row, c.column, c.index, fmt::format("'{}' is not an ISO 8601 date", c.text));
      return std::nullopt;
    }
    if (ts->precision != Precision::Day && ts->zone_unknown() && !zone_declared) {
      add(RuleId::Tz, row, c.column, c.index,
          fmt::format("'{}' has a clock time but no zone or UTC offset", c.text));
    }
    return ts->date;
  }

  void check_location(std::size_t row, const CellRef& c, std::optional<Date> as_of) {
    auto name = trim(c.text);
    if (name.empty()) {
      add(RuleId::Iso3166, row, c.column, c.index, "empty location");
      return;
    }
    try {
      const auto& ref = g_.resolve(name, as_of);
      if (ref.extension) {
        add(RuleId::Iso3166, row, c.column, c.index,
            fmt::format("'{}' resolves to {}, which is not an ISO 3166 code", c.text, ref.code));
      }
    } catch (const Error& e) {
      add(RuleId::Iso3166, row, c.column, c.index, e.what());
    }
  }

  void check_value(std::size_t row, const CellRef& c) {
    auto v = trim(c.text);
    if (is_count(v) || m_.is_unknown_marker(v)) return;
    if (v.empty()) {
      add(RuleId::Unknown, row, c.column, c.index, "empty count cell; mark missing values with a declared unknown marker");
    } else {
      add(RuleId::Unknown, row, c.column, c.index,
          fmt::format("'{}' is neither a count nor a declared unknown marker", c.text));
    }
  }

  void check_row(const RowView& r, bool zone_declared) {
    std::optional<Date> first_date;
    for (const auto& t : r.timestamps) {
      auto d = check_timestamp(r.row, t, zone_declared);
      if (!first_date) first_date = d;
    }
    if (r.location) check_location(r.row, *r.location, first_date);
    if (r.value) check_value(r.row, *r.value);
  }

  void table(const std::string& text) {
    check_interval_type(m_.interval_type.has_value(), "manifest");
    check_case_definition(m_.case_definition, "manifest");
    if (m_.location) check_location(0, {0, "location", *m_.location}, std::nullopt);

    RawTable t;
    try {
      t = m_.container == ContainerKind::Csv ? read_csv(text, report_.file, {.allow_ragged = true})
                                              : read_json_table(text, report_.file);
    } catch (const Error& e) {
      container_error(e);
      return;
    }
    const bool json = m_.container == ContainerKind::Json;
    auto column = [&](const std::string& name, const char* fallback) -> std::optional<std::size_t> {
      auto c = t.column(json ? std::string(fallback) : name);
      if (!c) add(RuleId::Container, 0, name, 0, fmt::format("column '{}' is not in the header", name));
      return c;
    };
    auto date_col = column(m_.date_column, "date");
    auto loc_col = m_.location ? std::nullopt : column(m_.location_column, "location");
    auto value_col = column(m_.value_column, "cases");

    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& cells = t.rows[r];
      if (cells.size() != t.header.size()) {
        add(RuleId::Container, r + 1, "", 0,
            fmt::format("row has {} cells but the header has {}", cells.size(), t.header.size()));
        continue;
      }
      RowView v;
      v.row = json ? t.row_lines[r] : r + 1;
      if (date_col) v.timestamps.push_back({*date_col, t.header[*date_col], cells[*date_col]});
      if (loc_col) v.location = CellRef{*loc_col, t.header[*loc_col], cells[*loc_col]};
      if (value_col) v.value = CellRef{*value_col, t.header[*value_col], cells[*value_col]};
      check_row(v, m_.zone.has_value());
    }
  }

  struct Meta {
    bool interval_type = false;
    std::optional<std::string> case_definition;
    bool zone = false;
  };

  Meta read_meta(const std::map<std::string, ordered_json>& items) {
    Meta meta;
    for (const auto& [key, v] : items) {
      if (key == "interval_type" && v.is_string()) {
        try {
          parse_interval_type(v.get<std::string>());
          meta.interval_type = true;
        } catch (const Error&) {
          add(RuleId::Interval, 0, "interval_type", 0, fmt::format("'{}' is not an interval type", v.get<std::string>()));
          meta.interval_type = true;  // reported once, as unparseable
        }
      } else if (key == "case_definition" && v.is_string()) {
        meta.case_definition = v.get<std::string>();
      } else if (key == "zone" && v.is_string()) {
        meta.zone = !v.get<std::string>().empty();
      }
    }
    return meta;
  }

  void apply_meta(const Meta& meta) {
    check_interval_type(meta.interval_type, "document metadata");
    check_case_definition(meta.case_definition, "document metadata");
  }

  void canonical_csv(const std::string& text) {
    RawTable t;
    try {
      t = read_csv(text, report_.file, {.allow_ragged = true});
    } catch (const Error& e) {
      container_error(e);
      return;
    }
    std::map<std::string, ordered_json> items;
    for (const auto& line : t.preamble) {
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        add(RuleId::Container, 0, "", 0, fmt::format("metadata line '#{}' has no ':'", line));
        continue;
      }
      try {
        items[trim(line.substr(0, colon))] = ordered_json::parse(trim(line.substr(colon + 1)));
      } catch (const ordered_json::parse_error&) {
        add(RuleId::Container, 0, "", 0, fmt::format("metadata line '#{}' has a malformed value", line));
      }
    }
    const auto meta = read_meta(items);
    apply_meta(meta);
    if (!std::equal(t.header.begin(), t.header.end(), std::begin(kCanonicalColumns), std::end(kCanonicalColumns))) {
      add(RuleId::Container, 0, "", 0, fmt::format("header must be {}", fmt::join(kCanonicalColumns, ",")));
      return;
    }
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& c = t.rows[r];
      if (c.size() != t.header.size()) {
        add(RuleId::Container, r + 1, "", 0, fmt::format("row has {} cells but the header has {}", c.size(), t.header.size()));
        continue;
      }
      RowView v{r + 1, {{0, "interval_start", c[0]}, {1, "interval_end", c[1]}}, CellRef{2, "location_code", c[2]},
                CellRef{5, "value", c[5]}};
      check_row(v, meta.zone);
    }
  }

  void canonical_json(const std::string& text) {
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
      add(RuleId::Container, 0, "", 0, fmt::format("invalid JSON: {}", e.what()));
      return;
    }
    if (!j.is_object() || !j.contains("metadata") || !j["metadata"].is_object() || !j.contains("observations") ||
        !j["observations"].is_array()) {
      add(RuleId::Container, 0, "", 0, "expected an object with 'metadata' and 'observations'");
      return;
    }
    std::map<std::string, ordered_json> items;
    for (const auto& [k, v] : j["metadata"].items()) items[k] = v;
    const auto meta = read_meta(items);
    apply_meta(meta);

    const auto& obs = j["observations"];
    for (std::size_t r = 0; r < obs.size(); ++r) {
      const auto& o = obs[r];
      if (!o.is_object()) {
        add(RuleId::Container, r + 1, "", 0, "observation is not an object");
        continue;
      }
      auto cell = [&](const char* key, std::size_t index) -> std::optional<CellRef> {
        if (!o.contains(key)) {
          add(RuleId::Container, r + 1, key, index, fmt::format("observation lacks '{}'", key));
          return std::nullopt;
        }
        const auto& x = o[key];
        return CellRef{index, key,
                       x.is_null()     ? std::string(kUnknownToken)
                       : x.is_string() ? x.get<std::string>()
                                       : x.dump()};
      };
      RowView v;
      v.row = r + 1;
      if (auto c = cell("interval_start", 0)) v.timestamps.push_back(*c);
      if (auto c = cell("interval_end", 1)) v.timestamps.push_back(*c);
      v.location = cell("location_code", 2);
      v.value = cell("value", 5);
      check_row(v, meta.zone);
    }
  }

  const DatasetManifest& m_;
  const Gazetteer& g_;
  LintReport report_;
};

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::span<const LintRule> lint_rules() noexcept { return kRules; }

const LintRule& rule(RuleId id) noexcept {
  for (const auto& r : kRules) {
    if (r.id == id) return r;
  }
  return kRules[0];
}

std::string_view to_string(Severity s) noexcept { return s == Severity::Error ? "error" : "warning"; }

std::size_t LintReport::errors() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t LintReport::warnings() const { return findings.size() - errors(); }

int LintReport::exit_code() const {
  if (errors()) return 2;
  return warnings() ? 1 : 0;
}

LintReport lint(std::string_view bytes, const DatasetManifest& manifest, const Gazetteer& gazetteer, std::string file) {
  return Linter(manifest, gazetteer, std::move(file)).run(bytes);
}

std::string report_to_json(const LintReport& report) {
  ordered_json j;
  j["file"] = report.file;
  auto& arr = j["findings"] = ordered_json::array();
  for (const auto& f : report.findings) {
    ordered_json x;
    x["rule"] = std::string(rule(f.rule).name);
    x["severity"] = std::string(to_string(f.severity));
    x["recommendation"] = rule(f.rule).recommendation;
    x["row"] = f.locus.row;
    x["column"] = f.locus.column;
    x["message"] = f.message;
    arr.push_back(std::move(x));
  }
  j["summary"] = {{"errors", report.errors()}, {"warnings", report.warnings()}, {"exit_code", report.exit_code()}};
  return j.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

std::string report_to_text(const LintReport& report) {
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"ROW", "COLUMN", "RULE", "SEVERITY", "MESSAGE"});
  for (const auto& f : report.findings) {
    rows.push_back({std::to_string(f.locus.row), f.locus.column.empty() ? "-" : f.locus.column,
                    std::string(rule(f.rule).name), std::string(to_string(f.severity)), f.message});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  if (!report.findings.empty()) {
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < width.size(); ++i) out += fmt::format("{:<{}}  ", r[i], width[i]);
      out += r[4];
      out += '\n';
    }
  }
  out += fmt::format("{}: {} error(s), {} warning(s)\n", report.file.empty() ? "<input>" : report.file,
                     report.errors(), report.warnings());
  return out;
}

std::string report_to_csv(const LintReport& report) {
  std::string out = "file,row,column,rule,severity,message\n";
  for (const auto& f : report.findings) {
    out += fmt::format("{},{},{},{},{},{}\n", csv_cell(f.locus.file), f.locus.row, csv_cell(f.locus.column),
                       rule(f.rule).name, to_string(f.severity), csv_cell(f.message));
  }
  return out;
}

}  // namespace epinorm

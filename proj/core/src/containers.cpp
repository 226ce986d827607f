#include "epinorm/containers.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "epinorm/error.hpp"

namespace epinorm {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void shape(const std::string& why, std::optional<std::size_t> row = std::nullopt) {
  throw Error(ErrorCode::ShapeMismatch, why, row);
}

struct CsvRecord {
  std::vector<std::string> cells;
  std::size_t line = 0;
  bool blank = false;
};

// Parses one record starting at `i`; advances `i` past its terminating newline.
CsvRecord parse_record(std::string_view text, std::size_t& i, std::size_t& line) {
  CsvRecord rec;
  rec.line = line;
  std::string cur;
  bool in_quotes = false;
  bool quoted_any = false;
  bool field_start = true;
  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cur.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
      } else {
        if (c == '\n') ++line;
        cur.push_back(c);
      }
      ++i;
      continue;
    }
    if (c == ',') {
      rec.cells.push_back(std::move(cur));
      cur.clear();
      field_start = true;
      ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      ++i;
      break;
    }
    if (c == '"' && field_start) {
      in_quotes = true;
      quoted_any = true;
      field_start = false;
      ++i;
      continue;
    }
    cur.push_back(c);
    field_start = false;
    ++i;
  }
  if (in_quotes) {
    throw Error(ErrorCode::MalformedDocument, fmt::format("unterminated quoted field starting on line {}", rec.line));
  }
  rec.cells.push_back(std::move(cur));
  rec.blank = rec.cells.size() == 1 && rec.cells[0].empty() && !quoted_any;
  return rec;
}

bool needs_quotes(std::string_view cell) {
  return cell.find_first_of(",\"\n\r") != std::string_view::npos ||
         (!cell.empty() && (cell.front() == ' ' || cell.back() == ' ' || cell.front() == '#'));
}

void append_cell(std::string& out, std::string_view cell) {
  if (!needs_quotes(cell)) {
    out.append(cell);
    return;
  }
  out.push_back('"');
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

CaseValue parse_canonical_value(std::string_view cell, std::size_t row) {
  if (cell == kUnknownToken) return CaseValue::unknown();
  if (cell.empty() || cell.size() > 19 || !std::all_of(cell.begin(), cell.end(), [](char c) {
        return c >= '0' && c <= '9';
      })) {
    shape(fmt::format("row {}: value '{}' is neither a non-negative integer nor '{}'", row, cell, kUnknownToken),
          row);
  }
  return CaseValue::count(std::stoull(std::string(cell)));
}

CanonicalTimestamp parse_canonical_timestamp(std::string_view cell, std::size_t row) {
  auto ts = parse_iso8601(cell);
  if (!ts) shape(fmt::format("row {}: '{}' is not an ISO 8601 timestamp", row, cell), row);
  return *ts;
}

ordered_json metadata_to_json(const DocumentMetadata& m) {
  ordered_json j;
  j["interval_type"] = std::string(to_string(*m.interval_type));
  j["case_definition"] = *m.case_definition;
  j["calendar"] = std::string(to_string(m.calendar));
  j["zone"] = m.zone ? ordered_json(*m.zone) : ordered_json(nullptr);
  j["source"] = m.source ? ordered_json(*m.source) : ordered_json(nullptr);
  return j;
}

std::optional<std::string> optional_string(const ordered_json& v, std::string_view key) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) shape(fmt::format("metadata '{}' must be a string or null", key));
  return v.get<std::string>();
}

void apply_metadata_key(DocumentMetadata& m, const std::string& key, const ordered_json& v) {
  try {
    if (key == "interval_type") {
      auto s = optional_string(v, key);
      m.interval_type = s ? std::optional(parse_interval_type(*s)) : std::nullopt;
    } else if (key == "case_definition") {
      m.case_definition = optional_string(v, key);
    } else if (key == "calendar") {
      auto s = optional_string(v, key);
      m.calendar = s ? parse_calendar(*s) : Calendar::Gregorian;
    } else if (key == "zone") {
      m.zone = optional_string(v, key);
    } else if (key == "source") {
      m.source = optional_string(v, key);
    } else {
      shape(fmt::format("unknown metadata key '{}'", key));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) shape(e.what());
    throw;
  }
}

CanonicalDocument read_canonical_csv(std::string_view text) {
  const auto table = read_csv(text);
  CanonicalDocument doc;
  for (const auto& line : table.preamble) {
    const auto body = trim(line);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) shape(fmt::format("malformed metadata line '#{}'", line));
    ordered_json value;
    try {
      value = ordered_json::parse(trim(body.substr(colon + 1)));
    } catch (const ordered_json::parse_error&) {
      throw Error(ErrorCode::MalformedDocument, fmt::format("malformed metadata value in '#{}'", line));
    }
    apply_metadata_key(doc.metadata, std::string(trim(body.substr(0, colon))), value);
  }
  check_metadata(doc.metadata);
  if (!std::equal(table.header.begin(), table.header.end(), std::begin(kCanonicalColumns),
                  std::end(kCanonicalColumns))) {
    shape(fmt::format("header must be {}", fmt::join(kCanonicalColumns, ",")));
  }
  doc.observations.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    const auto row = r + 1;
    Interval interval(parse_canonical_timestamp(cells[0], row), parse_canonical_timestamp(cells[1], row));
    CaseType type;
    try {
      type = CaseType::parse(cells[4]);
    } catch (const Error& e) {
      shape(fmt::format("row {}: {}", row, e.what()), row);
    }
    doc.observations.push_back(
        Observation{std::move(interval), cells[2], cells[3], std::move(type), parse_canonical_value(cells[5], row)});
  }
  return doc;
}

CanonicalDocument read_canonical_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("metadata") || !j.contains("observations") || j.size() != 2) {
    shape("canonical JSON must be an object with exactly 'metadata' and 'observations'");
  }
  CanonicalDocument doc;
  const auto& meta = j["metadata"];
  if (!meta.is_object()) shape("'metadata' must be an object");
  for (const auto& [key, value] : meta.items()) apply_metadata_key(doc.metadata, key, value);
  check_metadata(doc.metadata);

  const auto& obs = j["observations"];
  if (!obs.is_array()) shape("'observations' must be an array");
  doc.observations.reserve(obs.size());
  for (std::size_t r = 0; r < obs.size(); ++r) {
    const auto& o = obs[r];
    const auto row = r + 1;
    if (!o.is_object() || o.size() != std::size(kCanonicalColumns)) {
      shape(fmt::format("observation {} must have exactly the canonical fields", row), row);
    }
    for (auto col : kCanonicalColumns) {
      if (!o.contains(std::string(col))) shape(fmt::format("observation {} lacks '{}'", row, col), row);
    }
    for (auto col : {"interval_start", "interval_end", "location_code", "demographic", "case_type"}) {
      if (!o[col].is_string()) shape(fmt::format("observation {}: '{}' must be a string", row, col), row);
    }
    CaseValue value;
    if (o["value"].is_number_unsigned()) {
      value = CaseValue::count(o["value"].get<std::uint64_t>());
    } else if (!o["value"].is_null()) {
      shape(fmt::format("observation {}: value must be a non-negative integer or null", row), row);
    }
    CaseType type;
    try {
      type = CaseType::parse(o["case_type"].get<std::string>());
    } catch (const Error& e) {
      shape(fmt::format("observation {}: {}", row, e.what()), row);
    }
    doc.observations.push_back(Observation{
        Interval(parse_canonical_timestamp(o["interval_start"].get<std::string>(), row),
                 parse_canonical_timestamp(o["interval_end"].get<std::string>(), row)),
        o["location_code"].get<std::string>(), o["demographic"].get<std::string>(), std::move(type), value});
  }
  return doc;
}

}  // namespace

std::string_view to_string(ContainerKind k) noexcept { return k == ContainerKind::Csv ? "csv" : "json"; }

ContainerKind parse_container_kind(std::string_view text) {
  if (text == "csv") return ContainerKind::Csv;
  if (text == "json") return ContainerKind::Json;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown container '{}'; expected csv or json", text));
}

std::optional<std::size_t> RawTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

RawTable read_csv(std::string_view text, std::string source, CsvOptions options) {
  RawTable table;
  table.provenance = {std::move(source), ContainerKind::Csv};
  std::size_t i = 0;
  std::size_t line = 1;
  bool have_header = false;
  while (i < text.size()) {
    if (!have_header && text[i] == '#') {
      auto end = text.find('\n', i);
      if (end == std::string_view::npos) end = text.size();
      table.preamble.emplace_back(text.substr(i + 1, end - i - 1));
      i = end + 1;
      ++line;
      continue;
    }
    auto rec = parse_record(text, i, line);
    if (rec.blank) continue;
    if (!have_header) {
      table.header = std::move(rec.cells);
      have_header = true;
      continue;
    }
    const auto row = table.rows.size() + 1;
    if (rec.cells.size() != table.header.size() && !options.allow_ragged) {
      throw Error(ErrorCode::RaggedRow,
                  fmt::format("row {} (line {}) has {} cells but the header has {}", row, rec.line, rec.cells.size(),
                              table.header.size()),
                  row);
    }
    table.rows.push_back(std::move(rec.cells));
    table.row_lines.push_back(rec.line);
  }
  if (!have_header) throw Error(ErrorCode::EmptyInput, "CSV input has no header line");
  return table;
}

std::vector<JsonRecord> read_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!j.is_array()) shape("expected a top-level array of {\"date\", \"locations\"} objects");
  std::vector<JsonRecord> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& item = j[r];
    const auto row = r + 1;
    if (!item.is_object()) shape(fmt::format("entry {} is not an object", row), row);
    if (!item.contains("date") || !item["date"].is_string()) {
      shape(fmt::format("entry {} lacks a string 'date'", row), row);
    }
    if (!item.contains("locations") || !item["locations"].is_object()) {
      shape(fmt::format("entry {} lacks a 'locations' object", row), row);
    }
    const auto date = item["date"].get<std::string>();
    for (const auto& [name, count] : item["locations"].items()) {
      if (!count.is_number_unsigned()) {
        shape(fmt::format("entry {}: count for '{}' is not a non-negative integer", row, name), row);
      }
      out.push_back({date, name, count.get<std::uint64_t>()});
    }
  }
  return out;
}

RawTable json_records_to_table(const std::vector<JsonRecord>& records, std::string source) {
  RawTable table;
  table.provenance = {std::move(source), ContainerKind::Json};
  table.header = {"date", "location", "cases"};
  for (std::size_t i = 0; i < records.size(); ++i) {
    table.rows.push_back({records[i].date, records[i].location, std::to_string(records[i].count)});
    table.row_lines.push_back(i + 1);
  }
  return table;
}

RawTable read_json_table(std::string_view text, std::string source) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!j.is_array()) shape("expected a top-level array of {\"date\", \"locations\"} objects");
  RawTable table;
  table.provenance = {std::move(source), ContainerKind::Json};
  table.header = {"date", "location", "cases"};
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto& item = j[r];
    const auto row = r + 1;
    if (!item.is_object()) shape(fmt::format("entry {} is not an object", row), row);
    if (!item.contains("date") || !item["date"].is_string()) {
      shape(fmt::format("entry {} lacks a string 'date'", row), row);
    }
    if (!item.contains("locations") || !item["locations"].is_object()) {
      shape(fmt::format("entry {} lacks a 'locations' object", row), row);
    }
    for (const auto& [name, count] : item["locations"].items()) {
      std::string cell = count.is_null()     ? std::string(kUnknownToken)
                         : count.is_string() ? count.get<std::string>()
                                             : count.dump();
      table.rows.push_back({item["date"].get<std::string>(), name, std::move(cell)});
      table.row_lines.push_back(row);
    }
  }
  return table;
}

void check_metadata(const DocumentMetadata& m) {
  if (!m.interval_type) throw Error(ErrorCode::MissingMetadata, "metadata lacks interval_type");
  if (!m.case_definition || trim(*m.case_definition).empty()) {
    throw Error(ErrorCode::MissingMetadata, "metadata lacks a case_definition");
  }
}

std::string write_canonical(const CanonicalDocument& doc, ContainerKind kind) {
  check_metadata(doc.metadata);
  const auto meta = metadata_to_json(doc.metadata);
  constexpr auto kDumpIndent = -1;

  if (kind == ContainerKind::Csv) {
    std::string out;
    for (const auto& [key, value] : meta.items()) {
      out += fmt::format("# {}: {}\n", key, value.dump(kDumpIndent, ' ', false));
    }
    out += fmt::format("{}\n", fmt::join(kCanonicalColumns, ","));
    for (const auto& o : doc.observations) {
      const std::string cells[] = {format_iso8601(o.interval.start()), format_iso8601(o.interval.end()),
                                   o.location,
                                   o.demographic,
                                   o.case_type.to_string(),
                                   o.value.is_unknown() ? std::string(kUnknownToken) : o.value.to_string()};
      for (std::size_t c = 0; c < std::size(cells); ++c) {
        if (c) out.push_back(',');
        append_cell(out, cells[c]);
      }
      out.push_back('\n');
    }
    return out;
  }

  ordered_json j;
  j["metadata"] = meta;
  auto& obs = j["observations"] = ordered_json::array();
  for (const auto& o : doc.observations) {
    ordered_json item;
    item["interval_start"] = format_iso8601(o.interval.start());
    item["interval_end"] = format_iso8601(o.interval.end());
    item["location_code"] = o.location;
    item["demographic"] = o.demographic;
    item["case_type"] = o.case_type.to_string();
    item["value"] = o.value.is_unknown() ? ordered_json(nullptr) : ordered_json(o.value.value());
    obs.push_back(std::move(item));
  }
  return j.dump(2, ' ', false) + "\n";
}

CanonicalDocument read_canonical(std::string_view text, ContainerKind kind) {
  return kind == ContainerKind::Csv ? read_canonical_csv(text) : read_canonical_json(text);
}

}  // namespace epinorm

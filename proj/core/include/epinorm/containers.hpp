#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epinorm/intervals.hpp"
#include "epinorm/series.hpp"
#include "epinorm/temporal.hpp"

namespace epinorm {

enum class ContainerKind { Csv, Json };

std::string_view to_string(ContainerKind k) noexcept;
ContainerKind parse_container_kind(std::string_view text);

struct Provenance {
  std::string source;
  ContainerKind kind = ContainerKind::Csv;
};

/// Cells of a tabular source, exactly as written. Every row has one cell per
/// header column.
struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based source line on which each row starts.
  std::vector<std::size_t> row_lines;
  /// "#" comment lines that precede the header, without the leading '#'.
  std::vector<std::string> preamble;
  Provenance provenance;

  std::optional<std::size_t> column(std::string_view name) const;
};

struct CsvOptions {
  /// Keep rows whose cell count differs from the header instead of throwing;
  /// the RawTable width guarantee no longer holds for such tables.
  bool allow_ragged = false;
};

/// Comma-separated text with double-quote quoting ("" escapes a quote; quoted
/// fields may hold commas and newlines). Blank lines are skipped and leading
/// '#' lines before the header are kept as the preamble. Throws EmptyInput and
/// RaggedRow (row index is 1-based over data rows).
RawTable read_csv(std::string_view text, std::string source = {}, CsvOptions options = {});

/// One flattened (date, location, count) entry of the simple nested JSON form:
/// [{"date": ..., "locations": {name: count, ...}}, ...].
struct JsonRecord {
  std::string date;
  std::string location;
  std::uint64_t count = 0;

  bool operator==(const JsonRecord&) const = default;
};

/// Flattens the nested form in document order. Throws MalformedDocument for
/// JSON syntax errors and ShapeMismatch for missing keys or non-integer counts.
std::vector<JsonRecord> read_json(std::string_view text);

/// The same records as a three-column table (date, location, cases).
RawTable json_records_to_table(const std::vector<JsonRecord>& records, std::string source = {});

/// Lenient form of read_json for sources that may carry unknowns: a null count
/// becomes the "unknown" token, strings are kept verbatim and any other value
/// keeps its JSON text, so that the caller can judge each cell. Row lines are
/// the 1-based entry index.
RawTable read_json_table(std::string_view text, std::string source = {});

struct DocumentMetadata {
  std::optional<IntervalType> interval_type;
  std::optional<std::string> case_definition;
  Calendar calendar = Calendar::Gregorian;
  std::optional<std::string> zone;
  std::optional<std::string> source;

  bool operator==(const DocumentMetadata&) const = default;
};

/// Normalized output: explicit half-open intervals, location codes, declared
/// metadata.
struct CanonicalDocument {
  DocumentMetadata metadata;
  std::vector<Observation> observations;

  bool operator==(const CanonicalDocument&) const = default;
};

/// Column order of the canonical CSV form.
inline constexpr std::string_view kCanonicalColumns[] = {"interval_start", "interval_end", "location_code",
                                                         "demographic",    "case_type",    "value"};
inline constexpr std::string_view kUnknownToken = "unknown";

/// Throws MissingMetadata when interval type or a non-blank case definition is
/// missing.
void check_metadata(const DocumentMetadata& metadata);

/// Byte-stable serialization. CSV carries the metadata as "# key: <json>"
/// lines ahead of the header; JSON is {"metadata": ..., "observations": ...}
/// with null for unknown values. Observations are written in the given order.
std::string write_canonical(const CanonicalDocument& doc, ContainerKind kind);

/// Reads either canonical form back. Throws MalformedDocument, ShapeMismatch,
/// MissingMetadata or the temporal errors of malformed timestamps.
CanonicalDocument read_canonical(std::string_view text, ContainerKind kind);

}  // namespace epinorm

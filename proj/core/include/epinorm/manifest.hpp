#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epinorm/containers.hpp"
#include "epinorm/encoding.hpp"
#include "epinorm/epicalendar.hpp"
#include "epinorm/intervals.hpp"
#include "epinorm/series.hpp"
#include "epinorm/temporal.hpp"

namespace epinorm {

/// How rows of the source are laid out.
enum class Layout {
  Table,      // one row per (date, location, count), columns named below
  Canonical,  // this toolkit's own canonical CSV / JSON export
};

/// Either an explicit pattern or a full locale hint.
struct DateFormat {
  std::optional<std::string> pattern;
  std::optional<int> two_digit_year_base;
  std::optional<DateOrder> order;
  std::optional<Clock> clock;
};

/// Native reporting calendar of a source whose date cells name a reporting
/// period rather than a single instant.
enum class PeriodSystem { Mmwr, MondayStart, MonthlyScheme };

/// Everything a source varies on, declared once per source. Loaded from a
/// JSON object; unknown keys are rejected. Interval type, case type and case
/// definition are optional here so that lint can report their absence;
/// normalization requires them (see require_normalizable).
struct DatasetManifest {
  ContainerKind container = ContainerKind::Csv;
  Layout layout = Layout::Table;
  std::optional<Encoding> encoding;
  std::optional<DateFormat> date_format;
  Calendar calendar = Calendar::Gregorian;
  std::optional<Zone> zone;
  std::optional<IntervalType> interval_type;
  std::optional<Duration> period;
  Duration granule = Duration::days(1);
  std::optional<PeriodSystem> week_system;
  MonthlyReportScheme monthly_scheme;

  std::string date_column = "date";
  std::string location_column = "location";
  std::optional<std::string> location;  // fixed location for single-place files
  std::string value_column = "cases";
  std::optional<std::string> demographic_column;
  std::string demographic = "all";

  std::optional<std::filesystem::path> gazetteer;
  std::optional<CaseType> case_type;
  std::optional<std::string> case_definition;
  std::vector<std::string> unknown_markers;
  std::optional<std::string> source;

  bool is_unknown_marker(std::string_view cell) const;
};

/// Parses and validates a manifest. Relative gazetteer paths are resolved
/// against `base_dir`. Throws ManifestInvalid.
DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir = {});
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Throws ManifestInvalid unless interval type, case type and a non-blank
/// case definition are declared.
void require_normalizable(const DatasetManifest& manifest);

/// Reads date cells the way the manifest declares: pattern, then locale hint,
/// then plain ISO 8601. The manifest zone is attached to clock readings that
/// carry none.
class DateReader {
 public:
  explicit DateReader(const DatasetManifest& manifest);
  CanonicalTimestamp read(std::string_view cell) const;

 private:
  std::optional<DatePattern> pattern_;
  std::optional<LocaleHint> hint_;
  Calendar calendar_;
  std::optional<Zone> zone_;
};

}  // namespace epinorm

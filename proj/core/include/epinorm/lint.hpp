#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epinorm/geo.hpp"
#include "epinorm/manifest.hpp"

namespace epinorm {

/// Lint rules, in the order findings on the same cell are reported.
enum class RuleId {
  Container,  // R-CONTAINER: the container itself could not be read
  Utf8,       // R-UTF8
  Iso8601,    // R-ISO8601
  Tz,         // R-TZ
  Interval,   // R-INTERVAL
  Iso3166,    // R-ISO3166
  CaseDef,    // R-CASEDEF
  Unknown,    // R-UNKNOWN
};

enum class Severity { Warning, Error };

struct LintRule {
  RuleId id;
  std::string_view name;  // "R-ISO8601"
  Severity severity;
  int recommendation;     // publishing recommendation number; 0 for R-CONTAINER
  std::string_view summary;
};

std::span<const LintRule> lint_rules() noexcept;
const LintRule& rule(RuleId id) noexcept;
std::string_view to_string(Severity s) noexcept;

/// Where a finding points. Row 0 is the file as a whole (manifest or
/// metadata level); data rows are 1-based. `column_index` orders findings
/// within a row.
struct Locus {
  std::string file;
  std::size_t row = 0;
  std::string column;
  std::size_t column_index = 0;

  bool operator==(const Locus&) const = default;
};

struct Finding {
  RuleId rule;
  Severity severity;
  Locus locus;
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct LintReport {
  std::string file;
  std::vector<Finding> findings;  // sorted by (row, column_index, rule)

  std::size_t errors() const;
  std::size_t warnings() const;
  /// 0 clean, 1 warnings only, 2 at least one error.
  int exit_code() const;
};

/// Checks a source against the publishing recommendations. Never throws for
/// problems in the data; those become findings.
LintReport lint(std::string_view bytes, const DatasetManifest& manifest, const Gazetteer& gazetteer,
                std::string file = {});

std::string report_to_json(const LintReport& report);
std::string report_to_text(const LintReport& report);
std::string report_to_csv(const LintReport& report);

}  // namespace epinorm

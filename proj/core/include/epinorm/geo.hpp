#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epinorm/temporal.hpp"

namespace epinorm {

struct Population {
  std::uint64_t count = 0;
  std::optional<Date> as_of;

  bool operator==(const Population&) const = default;
};

/// One version of a place. Validity windows are half-open [valid_from, valid_to);
/// a missing bound is unbounded on that side. Several records may share a code
/// when boundaries changed over time.
struct LocationRef {
  std::string code;
  std::string canonical_name;
  std::vector<std::string> aliases;
  std::optional<Date> valid_from;
  std::optional<Date> valid_to;
  std::optional<Population> population;
  /// Finer-than-subdivision or otherwise non-ISO entry.
  bool extension = false;

  bool valid_on(Date d) const {
    return (!valid_from || *valid_from <= d) && (!valid_to || d < *valid_to);
  }
  bool operator==(const LocationRef&) const = default;
};

/// Case-, diacritic- and whitespace-insensitive lookup key: "Zürich",
/// "ZURICH" and " zurich " all fold to "zurich".
std::string fold_name(std::string_view name);

/// Immutable name -> place index.
class Gazetteer {
 public:
  /// Validates and indexes the entries. Throws GazetteerInvalid.
  explicit Gazetteer(std::vector<LocationRef> entries);

  static Gazetteer from_json(std::string_view json_text);
  static Gazetteer load(const std::filesystem::path& path);

  /// Resolves a name, ISO code or alias. Canonical names win over codes, codes
  /// over aliases. With `as_of`, only versions valid on that date qualify.
  /// When several versions of one code match and no date is given, the
  /// current (latest) version is returned.
  const LocationRef& resolve(std::string_view name, std::optional<Date> as_of = std::nullopt) const;

  const std::vector<LocationRef>& entries() const noexcept { return entries_; }

 private:
  enum class MatchKind { Canonical = 0, Code = 1, Alias = 2 };
  struct Match {
    std::size_t index;
    MatchKind kind;
  };

  std::vector<LocationRef> entries_;
  std::map<std::string, std::vector<Match>, std::less<>> index_;
};

/// Cases per 100,000 population. Throws ZeroPopulation.
double incidence_rate(std::uint64_t cases, std::uint64_t population);

}  // namespace epinorm

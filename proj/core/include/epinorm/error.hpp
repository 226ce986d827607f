#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epinorm {

enum class ErrorCode {
  // encoding
  DeclaredEncodingMismatch,
  UnsupportedEncoding,
  // containers
  EmptyInput,
  RaggedRow,
  MalformedDocument,
  ShapeMismatch,
  MissingMetadata,
  // temporal
  AmbiguousDate,
  InvalidDate,
  UnparseableText,
  // intervals
  NonMonotonicTimestamps,
  MissingPeriod,
  ZeroGranule,
  InvalidInterval,
  OverlappingIntervals,
  // epicalendar
  NoSuchWeek,
  InvalidScheme,
  // geo
  UnknownLocation,
  AmbiguousLocation,
  NoVersionForDate,
  ZeroPopulation,
  GazetteerInvalid,
  // series
  ContextMismatch,
  ConflictingValues,
  NoSnapshotYet,
  RevisionOutOfOrder,
  InvalidCount,
  // cli / plumbing
  ManifestInvalid,
  InvalidArgument,
  Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is the contract; the message
/// is for humans. `row` is set when the error is attributable to one input row.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace epinorm

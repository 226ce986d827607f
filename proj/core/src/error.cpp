#include "epinorm/error.hpp"

namespace epinorm {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DeclaredEncodingMismatch: return "DeclaredEncodingMismatch";
    case ErrorCode::UnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MissingMetadata: return "MissingMetadata";
    case ErrorCode::AmbiguousDate: return "AmbiguousDate";
    case ErrorCode::InvalidDate: return "InvalidDate";
    case ErrorCode::UnparseableText: return "UnparseableText";
    case ErrorCode::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ErrorCode::MissingPeriod: return "MissingPeriod";
    case ErrorCode::ZeroGranule: return "ZeroGranule";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::NoSuchWeek: return "NoSuchWeek";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::UnknownLocation: return "UnknownLocation";
    case ErrorCode::AmbiguousLocation: return "AmbiguousLocation";
    case ErrorCode::NoVersionForDate: return "NoVersionForDate";
    case ErrorCode::ZeroPopulation: return "ZeroPopulation";
    case ErrorCode::GazetteerInvalid: return "GazetteerInvalid";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::ConflictingValues: return "ConflictingValues";
    case ErrorCode::NoSnapshotYet: return "NoSnapshotYet";
    case ErrorCode::RevisionOutOfOrder: return "RevisionOutOfOrder";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::ManifestInvalid: return "ManifestInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row)
    : std::runtime_error(message), code_(code), row_(row) {}

}  // namespace epinorm

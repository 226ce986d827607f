#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "epinorm/containers.hpp"
#include "epinorm/geo.hpp"
#include "epinorm/manifest.hpp"

namespace epinorm {

struct NormalizeResult {
  CanonicalDocument document;
  /// Non-fatal observations about the source (transcoding, mixed newlines,
  /// suspicious years, extension locations, zone-less clock readings).
  std::vector<std::string> warnings;
};

/// decode -> container -> dates -> locations -> values -> intervals -> series.
///
/// Rows are grouped by (location, demographic, case type); each group is
/// sorted by timestamp and turned into intervals according to the manifest's
/// interval type, or its week system when one is declared. Observations come
/// out ordered by context, then interval. Throws on the first problem; the row
/// (1-based data row) is attached where one is known.
NormalizeResult normalize(std::string_view bytes, const DatasetManifest& manifest, const Gazetteer& gazetteer,
                          std::string source_name = {});

}  // namespace epinorm

#pragma once

#include <filesystem>
#include <vector>

#include "epinorm/containers.hpp"
#include "epinorm/series.hpp"

namespace epinorm {

/// Publication-dated snapshots on disk: one canonical JSON document per
/// publication date ("YYYY-MM-DD.json") plus "index.json" listing them in
/// order. Writes go through a temporary file and a rename; a published
/// snapshot is never rewritten.
class RevisionStore {
 public:
  /// Opens an existing store. Throws Io when the index is missing or broken.
  static RevisionStore open(const std::filesystem::path& dir);
  /// Opens `dir`, creating an empty store when it has no index yet.
  static RevisionStore open_or_create(const std::filesystem::path& dir);

  /// Appends a snapshot. Throws RevisionOutOfOrder unless `publication` is
  /// later than every recorded snapshot.
  void publish(Date publication, const CanonicalDocument& doc);

  const std::vector<Date>& publications() const noexcept { return publications_; }
  CanonicalDocument snapshot(Date publication) const;
  /// Latest snapshot published on or before `publication`; NoSnapshotYet otherwise.
  CanonicalDocument as_of(Date publication) const;
  Revisioned<CanonicalDocument> load() const;

  /// Observation-level changes between the snapshots in effect at p1 < p2.
  std::vector<RevisionChange> diff(Date p1, Date p2) const;

  const std::filesystem::path& directory() const noexcept { return dir_; }

 private:
  explicit RevisionStore(std::filesystem::path dir) : dir_(std::move(dir)) {}
  void write_index() const;

  std::filesystem::path dir_;
  std::vector<Date> publications_;
};

/// Writes `contents` next to `path` and renames it into place, so readers see
/// either the old file or the complete new one.
void write_file_atomically(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace epinorm

#include "epinorm/store.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "epinorm/error.hpp"

namespace epinorm {

namespace fs = std::filesystem;

namespace {

constexpr const char* kIndexName = "index.json";

std::string snapshot_name(Date d) { return format_date(d) + ".json"; }

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomically(const fs::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::Io, fmt::format("short write to '{}'", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::Io, fmt::format("cannot move output into '{}'", path.string()));
  }
}

RevisionStore RevisionStore::open(const fs::path& dir) {
  const auto index_path = dir / kIndexName;
  if (!fs::exists(index_path)) throw Error(ErrorCode::Io, fmt::format("'{}' is not a revision store", dir.string()));
  nlohmann::json index;
  try {
    index = nlohmann::json::parse(read_file(index_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, fmt::format("corrupt store index '{}': {}", index_path.string(), e.what()));
  }
  RevisionStore store(dir);
  if (!index.is_object() || !index.contains("snapshots") || !index["snapshots"].is_array()) {
    throw Error(ErrorCode::Io, fmt::format("corrupt store index '{}'", index_path.string()));
  }
  for (const auto& entry : index["snapshots"]) {
    if (!entry.is_object() || !entry.contains("publication_date") || !entry["publication_date"].is_string()) {
      throw Error(ErrorCode::Io, fmt::format("corrupt store index '{}'", index_path.string()));
    }
    const Date d = parse_calendar_date(entry["publication_date"].get<std::string>());
    if (!store.publications_.empty() && !(store.publications_.back() < d)) {
      throw Error(ErrorCode::Io, fmt::format("store index '{}' is out of order", index_path.string()));
    }
    store.publications_.push_back(d);
  }
  return store;
}

RevisionStore RevisionStore::open_or_create(const fs::path& dir) {
  if (fs::exists(dir / kIndexName)) return open(dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, fmt::format("cannot create store '{}'", dir.string()));
  RevisionStore store(dir);
  store.write_index();
  return store;
}

void RevisionStore::write_index() const {
  nlohmann::ordered_json index;
  auto& list = index["snapshots"] = nlohmann::ordered_json::array();
  for (const auto d : publications_) {
    list.push_back({{"publication_date", format_date(d)}, {"file", snapshot_name(d)}});
  }
  write_file_atomically(dir_ / kIndexName, index.dump(2) + "\n");
}

void RevisionStore::publish(Date publication, const CanonicalDocument& doc) {
  if (!publications_.empty() && !(publications_.back() < publication)) {
    throw Error(ErrorCode::RevisionOutOfOrder,
                fmt::format("publication {} does not follow the latest snapshot {}", format_date(publication),
                            format_date(publications_.back())));
  }
  write_file_atomically(dir_ / snapshot_name(publication), write_canonical(doc, ContainerKind::Json));
  publications_.push_back(publication);
  write_index();
}

CanonicalDocument RevisionStore::snapshot(Date publication) const {
  if (std::find(publications_.begin(), publications_.end(), publication) == publications_.end()) {
    throw Error(ErrorCode::NoSnapshotYet, fmt::format("no snapshot was published on {}", format_date(publication)));
  }
  return read_canonical(read_file(dir_ / snapshot_name(publication)), ContainerKind::Json);
}

Revisioned<CanonicalDocument> RevisionStore::load() const {
  Revisioned<CanonicalDocument> out;
  for (const auto d : publications_) out.record(d, snapshot(d));
  return out;
}

CanonicalDocument RevisionStore::as_of(Date publication) const {
  auto it = std::upper_bound(publications_.begin(), publications_.end(), publication);
  if (it == publications_.begin()) {
    throw Error(ErrorCode::NoSnapshotYet,
                publications_.empty()
                    ? std::string("the store holds no snapshots")
                    : fmt::format("nothing was published on or before {}; first snapshot is {}",
                                  format_date(publication), format_date(publications_.front())));
  }
  return snapshot(*std::prev(it));
}

std::vector<RevisionChange> RevisionStore::diff(Date p1, Date p2) const {
  if (!(p1 < p2)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("diff needs p1 < p2, got {} and {}", format_date(p1), format_date(p2)));
  }
  const auto a = as_of(p1);
  const auto b = as_of(p2);
  return diff_observations(a.observations, b.observations);
}

}  // namespace epinorm

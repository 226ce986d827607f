#pragma once

#include <compare>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "epinorm/case_value.hpp"
#include "epinorm/error.hpp"
#include "epinorm/intervals.hpp"
#include "epinorm/temporal.hpp"

namespace epinorm {

/// What was counted. Combined types keep their composition as an opaque label
/// ("confirmed+suspected") that is only ever compared for exact equality.
struct CaseType {
  enum class Kind { Confirmed, Suspected, Hospitalizations, Deaths, Combined };

  Kind kind = Kind::Confirmed;
  std::string composition;  // only for Combined

  static CaseType parse(std::string_view text);
  std::string to_string() const;

  auto operator<=>(const CaseType&) const = default;
};

/// The (location, demographic, case type) triple every series is keyed on.
struct SeriesContext {
  std::string location;
  std::string demographic = "all";
  CaseType case_type;

  auto operator<=>(const SeriesContext&) const = default;
};

struct Observation {
  Interval interval;
  std::string location;
  std::string demographic = "all";
  CaseType case_type;
  CaseValue value;

  SeriesContext context() const { return {location, demographic, case_type}; }
  bool operator==(const Observation&) const = default;
};

/// Observations sharing one context, in interval order, with no two
/// intervals overlapping. Immutable once built.
class TimeSeries {
 public:
  /// Sorts `observations` and checks them. Throws ContextMismatch for an
  /// observation from another context and OverlappingIntervals for clashes.
  static TimeSeries make(SeriesContext context, std::vector<Observation> observations);

  const SeriesContext& context() const noexcept { return context_; }
  const std::vector<Observation>& observations() const noexcept { return observations_; }
  std::size_t size() const noexcept { return observations_.size(); }
  /// Value recorded for exactly this span, if any.
  std::optional<CaseValue> value_at(const Interval& interval) const;

  bool operator==(const TimeSeries&) const = default;

 private:
  TimeSeries(SeriesContext c, std::vector<Observation> o) : context_(std::move(c)), observations_(std::move(o)) {}

  SeriesContext context_;
  std::vector<Observation> observations_;
};

/// Splits observations into one series per context, ordered by context.
std::vector<TimeSeries> group_series(std::span<const Observation> observations);

enum class MergePolicy { PreferNewer, ErrorOnConflict };

std::string_view to_string(MergePolicy p) noexcept;
MergePolicy parse_merge_policy(std::string_view text);

/// Union of two series of the same context; `newer` is the more recent source.
///
/// Equal values on the same interval collapse to one observation. UNKNOWN
/// never replaces a known value. Under PreferNewer a differing known value in
/// `newer` wins; under ErrorOnConflict any differing pair throws
/// ConflictingValues. Partially overlapping intervals throw
/// OverlappingIntervals.
TimeSeries merge(const TimeSeries& older, const TimeSeries& newer, MergePolicy policy);

/// Snapshots keyed by publication date. Append-only: each new snapshot must be
/// published strictly after the last one, and recorded snapshots never change.
template <class Snapshot>
class Revisioned {
 public:
  void record(Date publication, Snapshot snapshot) {
    if (!snapshots_.empty() && !(snapshots_.rbegin()->first < publication)) {
      throw Error(ErrorCode::RevisionOutOfOrder,
                  fmt::format("publication {} does not follow the latest snapshot {}", format_date(publication),
                              format_date(snapshots_.rbegin()->first)));
    }
    snapshots_.emplace(publication, std::move(snapshot));
  }

  /// Snapshot with the greatest publication date not after `publication`.
  const Snapshot& as_of(Date publication) const {
    auto it = snapshots_.upper_bound(publication);
    if (it == snapshots_.begin()) {
      throw Error(ErrorCode::NoSnapshotYet,
                  snapshots_.empty()
                      ? std::string("no snapshots have been published")
                      : fmt::format("nothing was published on or before {}; first snapshot is {}",
                                    format_date(publication), format_date(snapshots_.begin()->first)));
    }
    return std::prev(it)->second;
  }

  std::vector<Date> publications() const {
    std::vector<Date> out;
    for (const auto& [d, _] : snapshots_) out.push_back(d);
    return out;
  }
  bool empty() const noexcept { return snapshots_.empty(); }
  std::size_t size() const noexcept { return snapshots_.size(); }

 private:
  std::map<Date, Snapshot> snapshots_;
};

using RevisionedSeries = Revisioned<TimeSeries>;

/// One interval whose value differs between two snapshots. A missing side
/// means the interval was absent from that snapshot.
struct RevisionChange {
  SeriesContext context;
  Interval interval;
  std::optional<CaseValue> before;
  std::optional<CaseValue> after;

  bool operator==(const RevisionChange&) const = default;
};

/// Changed, added and removed intervals between two observation sets, ordered
/// by context then interval.
std::vector<RevisionChange> diff_observations(std::span<const Observation> before, std::span<const Observation> after);

/// Changes between the snapshots in effect at p1 and p2 (p1 < p2).
std::vector<RevisionChange> revision_diff(const RevisionedSeries& rs, Date p1, Date p2);

}  // namespace epinorm

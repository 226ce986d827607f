#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "epinorm/case_value.hpp"
#include "epinorm/temporal.hpp"

namespace epinorm {

/// How a reported timestamp relates to the span of time it summarizes.
/// There is deliberately no leading-exclusive kind.
enum class IntervalType {
  Leading,            // timestamp starts the interval
  TrailingExclusive,  // timestamp ends the interval and is not part of it
  TrailingInclusive,  // timestamp ends the interval and is part of it
};

std::string_view to_string(IntervalType t) noexcept;
IntervalType parse_interval_type(std::string_view text);

/// Half-open span [start, end). Construction enforces start < end.
class Interval {
 public:
  Interval(CanonicalTimestamp start, CanonicalTimestamp end);

  const CanonicalTimestamp& start() const noexcept { return start_; }
  const CanonicalTimestamp& end() const noexcept { return end_; }
  std::chrono::seconds length() const { return end_.instant() - start_.instant(); }

  bool contains(const CanonicalTimestamp& t) const {
    return start_.instant() <= t.instant() && t.instant() < end_.instant();
  }
  bool overlaps(const Interval& o) const {
    return start_.instant() < o.end_.instant() && o.start_.instant() < end_.instant();
  }
  /// Same span of time, regardless of how the endpoints are written.
  bool same_span(const Interval& o) const {
    return start_.instant() == o.start_.instant() && end_.instant() == o.end_.instant();
  }
  /// Chronological order by start, then end.
  bool before(const Interval& o) const {
    if (start_.instant() != o.start_.instant()) return start_.instant() < o.start_.instant();
    return end_.instant() < o.end_.instant();
  }

  bool operator==(const Interval&) const = default;

 private:
  CanonicalTimestamp start_;
  CanonicalTimestamp end_;
};

struct TimestampedPoint {
  CanonicalTimestamp timestamp;
  CaseValue value;

  bool operator==(const TimestampedPoint&) const = default;
};

struct IntervalCount {
  Interval interval;
  CaseValue value;

  bool operator==(const IntervalCount&) const = default;
};

/// Gap shared by every consecutive pair, or nullopt for fewer than two points
/// or an irregular series.
std::optional<Duration> regular_period(std::span<const TimestampedPoint> points);

/// Turns reported timestamps into explicit intervals.
///
/// Interior intervals always span consecutive timestamps. The one boundary
/// interval (the last for leading, the first for the trailing kinds) has
/// length `period`; when `period` is absent it is taken from a regular
/// series' common gap, and MissingPeriod is thrown for singleton or irregular
/// series. Trailing-inclusive intervals are the trailing-exclusive ones moved
/// forward by one `granule`.
std::vector<IntervalCount> to_interval_series(std::span<const TimestampedPoint> points, IntervalType type,
                                              std::optional<Duration> period = std::nullopt,
                                              Duration granule = Duration::days(1));

/// Inverse of to_interval_series for the same type and granule.
std::vector<TimestampedPoint> from_interval_series(std::span<const IntervalCount> series, IntervalType type,
                                                   Duration granule = Duration::days(1));

}  // namespace epinorm

#include "epinorm/intervals.hpp"

#include <fmt/format.h>

#include "epinorm/error.hpp"

namespace epinorm {

std::string_view to_string(IntervalType t) noexcept {
  switch (t) {
    case IntervalType::Leading: return "leading";
    case IntervalType::TrailingExclusive: return "trailing_exclusive";
    case IntervalType::TrailingInclusive: return "trailing_inclusive";
  }
  return "leading";
}

IntervalType parse_interval_type(std::string_view text) {
  if (text == "leading") return IntervalType::Leading;
  if (text == "trailing_exclusive") return IntervalType::TrailingExclusive;
  if (text == "trailing_inclusive") return IntervalType::TrailingInclusive;
  throw Error(ErrorCode::InvalidArgument,
              fmt::format("unknown interval type '{}'; expected leading, trailing_exclusive or trailing_inclusive",
                          text));
}

Interval::Interval(CanonicalTimestamp start, CanonicalTimestamp end) : start_(std::move(start)), end_(std::move(end)) {
  if (!(start_.instant() < end_.instant())) {
    throw Error(ErrorCode::InvalidInterval, fmt::format("interval [{}, {}) is empty or reversed",
                                                        format_iso8601(start_), format_iso8601(end_)));
  }
}

std::optional<Duration> regular_period(std::span<const TimestampedPoint> points) {
  if (points.size() < 2) return std::nullopt;
  const auto gap = points[1].timestamp.instant() - points[0].timestamp.instant();
  for (std::size_t i = 2; i < points.size(); ++i) {
    if (points[i].timestamp.instant() - points[i - 1].timestamp.instant() != gap) return std::nullopt;
  }
  return Duration{gap};
}

std::vector<IntervalCount> to_interval_series(std::span<const TimestampedPoint> points, IntervalType type,
                                              std::optional<Duration> period, Duration granule) {
  if (!granule.positive()) throw Error(ErrorCode::ZeroGranule, "granule must be a positive duration");
  if (period && !period->positive()) throw Error(ErrorCode::MissingPeriod, "period must be a positive duration");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i - 1].timestamp.instant() < points[i].timestamp.instant())) {
      throw Error(ErrorCode::NonMonotonicTimestamps,
                  fmt::format("timestamp {} does not follow {}", format_iso8601(points[i].timestamp),
                              format_iso8601(points[i - 1].timestamp)),
                  i);
    }
  }
  if (points.empty()) return {};

  if (!period) period = regular_period(points);
  if (!period) {
    throw Error(ErrorCode::MissingPeriod, points.size() == 1
                                              ? "a single observation needs an explicit period"
                                              : "irregular series need an explicit period for the boundary interval");
  }

  std::vector<IntervalCount> out;
  out.reserve(points.size());
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ts = points[i].timestamp;
    switch (type) {
      case IntervalType::Leading: {
        auto end = i + 1 < n ? points[i + 1].timestamp : ts.plus(*period);
        out.push_back({Interval(ts, end), points[i].value});
        break;
      }
      case IntervalType::TrailingExclusive:
      case IntervalType::TrailingInclusive: {
        auto start = i == 0 ? ts.minus(*period) : points[i - 1].timestamp;
        auto end = ts;
        if (type == IntervalType::TrailingInclusive) {
          start = start.plus(granule);
          end = end.plus(granule);
        }
        out.push_back({Interval(start, end), points[i].value});
        break;
      }
    }
  }
  return out;
}

std::vector<TimestampedPoint> from_interval_series(std::span<const IntervalCount> series, IntervalType type,
                                                   Duration granule) {
  if (!granule.positive()) throw Error(ErrorCode::ZeroGranule, "granule must be a positive duration");
  for (std::size_t i = 1; i < series.size(); ++i) {
    const auto& prev = series[i - 1].interval;
    const auto& cur = series[i].interval;
    if (cur.start().instant() < prev.end().instant()) {
      throw Error(ErrorCode::OverlappingIntervals,
                  fmt::format("interval starting {} overlaps or precedes the one ending {}",
                              format_iso8601(cur.start()), format_iso8601(prev.end())),
                  i);
    }
  }
  std::vector<TimestampedPoint> out;
  out.reserve(series.size());
  for (const auto& [interval, value] : series) {
    switch (type) {
      case IntervalType::Leading: out.push_back({interval.start(), value}); break;
      case IntervalType::TrailingExclusive: out.push_back({interval.end(), value}); break;
      case IntervalType::TrailingInclusive: out.push_back({interval.end().minus(granule), value}); break;
    }
  }
  return out;
}

}  // namespace epinorm

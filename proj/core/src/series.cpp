#include "epinorm/series.hpp"

#include <algorithm>
#include <tuple>

namespace epinorm {

namespace {

using SpanKey = std::pair<std::chrono::sys_seconds, std::chrono::sys_seconds>;

SpanKey span_key(const Interval& i) { return {i.start().instant(), i.end().instant()}; }

std::string describe(const Interval& i) {
  return fmt::format("[{}, {})", format_iso8601(i.start()), format_iso8601(i.end()));
}

constexpr std::pair<CaseType::Kind, std::string_view> kKindNames[] = {
    {CaseType::Kind::Confirmed, "confirmed"},
    {CaseType::Kind::Suspected, "suspected"},
    {CaseType::Kind::Hospitalizations, "hospitalizations"},
    {CaseType::Kind::Deaths, "deaths"},
};

constexpr std::string_view kCombinedPrefix = "combined:";

}  // namespace

CaseType CaseType::parse(std::string_view text) {
  for (const auto& [kind, name] : kKindNames) {
    if (text == name) return {kind, {}};
  }
  if (text.substr(0, kCombinedPrefix.size()) == kCombinedPrefix && text.size() > kCombinedPrefix.size()) {
    return {Kind::Combined, std::string(text.substr(kCombinedPrefix.size()))};
  }
  throw Error(ErrorCode::InvalidArgument,
              fmt::format("unknown case type '{}'; expected confirmed, suspected, hospitalizations, deaths or "
                          "combined:<composition>",
                          text));
}

std::string CaseType::to_string() const {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return std::string(name);
  }
  return std::string(kCombinedPrefix) + composition;
}

TimeSeries TimeSeries::make(SeriesContext context, std::vector<Observation> observations) {
  for (std::size_t i = 0; i < observations.size(); ++i) {
    if (observations[i].context() != context) {
      throw Error(ErrorCode::ContextMismatch,
                  fmt::format("observation at {} belongs to {} / {} / {}, not {} / {} / {}",
                              describe(observations[i].interval), observations[i].location,
                              observations[i].demographic, observations[i].case_type.to_string(), context.location,
                              context.demographic, context.case_type.to_string()),
                  i);
    }
  }
  std::stable_sort(observations.begin(), observations.end(),
                   [](const Observation& a, const Observation& b) { return a.interval.before(b.interval); });
  for (std::size_t i = 1; i < observations.size(); ++i) {
    if (observations[i - 1].interval.overlaps(observations[i].interval)) {
      throw Error(ErrorCode::OverlappingIntervals,
                  fmt::format("{} overlaps {} in series {}", describe(observations[i - 1].interval),
                              describe(observations[i].interval), context.location));
    }
  }
  return TimeSeries(std::move(context), std::move(observations));
}

std::optional<CaseValue> TimeSeries::value_at(const Interval& interval) const {
  for (const auto& o : observations_) {
    if (o.interval.same_span(interval)) return o.value;
  }
  return std::nullopt;
}

std::vector<TimeSeries> group_series(std::span<const Observation> observations) {
  std::map<SeriesContext, std::vector<Observation>> groups;
  for (const auto& o : observations) groups[o.context()].push_back(o);
  std::vector<TimeSeries> out;
  out.reserve(groups.size());
  for (auto& [ctx, obs] : groups) out.push_back(TimeSeries::make(ctx, std::move(obs)));
  return out;
}

std::string_view to_string(MergePolicy p) noexcept {
  return p == MergePolicy::PreferNewer ? "prefer_newer" : "error_on_conflict";
}

MergePolicy parse_merge_policy(std::string_view text) {
  if (text == "prefer_newer") return MergePolicy::PreferNewer;
  if (text == "error_on_conflict") return MergePolicy::ErrorOnConflict;
  throw Error(ErrorCode::InvalidArgument, fmt::format("unknown merge policy '{}'", text));
}

TimeSeries merge(const TimeSeries& older, const TimeSeries& newer, MergePolicy policy) {
  if (older.context() != newer.context()) {
    throw Error(ErrorCode::ContextMismatch, fmt::format("cannot merge series for {} with series for {}",
                                                        older.context().location, newer.context().location));
  }
  std::map<SpanKey, Observation> merged;
  for (const auto& o : older.observations()) merged.emplace(span_key(o.interval), o);
  for (const auto& o : newer.observations()) {
    auto [it, inserted] = merged.emplace(span_key(o.interval), o);
    if (inserted) continue;
    const CaseValue& kept = it->second.value;
    const CaseValue& incoming = o.value;
    if (kept == incoming) continue;
    if (policy == MergePolicy::ErrorOnConflict) {
      throw Error(ErrorCode::ConflictingValues, fmt::format("conflicting values for {}: {} vs {}",
                                                            describe(o.interval), kept.to_string(),
                                                            incoming.to_string()));
    }
    if (incoming.is_unknown()) continue;  // unknown never overwrites a known value
    it->second.value = incoming;
  }
  std::vector<Observation> obs;
  obs.reserve(merged.size());
  for (auto& [_, o] : merged) obs.push_back(std::move(o));
  return TimeSeries::make(older.context(), std::move(obs));
}

std::vector<RevisionChange> diff_observations(std::span<const Observation> before, std::span<const Observation> after) {
  using Key = std::tuple<SeriesContext, std::chrono::sys_seconds, std::chrono::sys_seconds>;
  auto key = [](const Observation& o) {
    return Key{o.context(), o.interval.start().instant(), o.interval.end().instant()};
  };
  std::map<Key, const Observation*> old_index;
  std::map<Key, const Observation*> new_index;
  for (const auto& o : before) old_index.emplace(key(o), &o);
  for (const auto& o : after) new_index.emplace(key(o), &o);

  std::vector<RevisionChange> out;
  auto oi = old_index.begin();
  auto ni = new_index.begin();
  while (oi != old_index.end() || ni != new_index.end()) {
    if (ni == new_index.end() || (oi != old_index.end() && oi->first < ni->first)) {
      out.push_back({oi->second->context(), oi->second->interval, oi->second->value, std::nullopt});
      ++oi;
    } else if (oi == old_index.end() || ni->first < oi->first) {
      out.push_back({ni->second->context(), ni->second->interval, std::nullopt, ni->second->value});
      ++ni;
    } else {
      if (oi->second->value != ni->second->value) {
        out.push_back({ni->second->context(), ni->second->interval, oi->second->value, ni->second->value});
      }
      ++oi;
      ++ni;
    }
  }
  return out;
}

std::vector<RevisionChange> revision_diff(const RevisionedSeries& rs, Date p1, Date p2) {
  if (!(p1 < p2)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("diff needs p1 < p2, got {} and {}", format_date(p1), format_date(p2)));
  }
  const auto& a = rs.as_of(p1);
  const auto& b = rs.as_of(p2);
  return diff_observations(a.observations(), b.observations());
}

}  // namespace epinorm

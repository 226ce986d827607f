#include <gtest/gtest.h>

#include "epinorm/error.hpp"
#include "epinorm/series.hpp"

using namespace epinorm;
using namespace std::chrono;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

Date ymd(int y, unsigned m, unsigned d) { return sys_days{year{y} / month{m} / day{d}}; }

Interval week(int y, unsigned m, unsigned d) {
  auto s = CanonicalTimestamp::from_ymd(y, m, d);
  return Interval(s, s.plus(Duration::days(7)));
}

const SeriesContext kCtx{"US", "all", {}};
const Interval kI1 = week(2016, 5, 15);
const Interval kI2 = week(2016, 5, 22);

Observation obs(const Interval& i, CaseValue v) { return {i, kCtx.location, kCtx.demographic, kCtx.case_type, v}; }

TimeSeries series(std::vector<Observation> o) { return TimeSeries::make(kCtx, std::move(o)); }

}  // namespace

TEST(CaseType, Names) {
  EXPECT_EQ(CaseType::parse("deaths").kind, CaseType::Kind::Deaths);
  auto c = CaseType::parse("combined:confirmed+suspected");
  EXPECT_EQ(c.kind, CaseType::Kind::Combined);
  EXPECT_EQ(c.composition, "confirmed+suspected");
  EXPECT_EQ(c.to_string(), "combined:confirmed+suspected");
  EXPECT_EQ(code_of([] { CaseType::parse("combined:"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { CaseType::parse("cases"); }), ErrorCode::InvalidArgument);
}

TEST(CaseValue, UnknownIsNotZero) {
  EXPECT_NE(CaseValue::unknown(), CaseValue::count(0));
  EXPECT_EQ(CaseValue::unknown().to_string(), "unknown");
  std::vector<CaseValue> v{CaseValue::count(2), CaseValue::unknown()};
  EXPECT_TRUE(sum(v).is_unknown());
  std::vector<CaseValue> w{CaseValue::count(2), CaseValue::count(0)};
  EXPECT_EQ(sum(w), CaseValue::count(2));
}

TEST(TimeSeries, SortsAndChecks) {
  auto s = series({obs(kI2, CaseValue::count(5)), obs(kI1, CaseValue::count(2))});
  EXPECT_EQ(s.observations()[0].interval, kI1);
  EXPECT_EQ(s.value_at(kI2), CaseValue::count(5));
  EXPECT_FALSE(s.value_at(week(2016, 6, 1)));

  auto other = obs(kI1, CaseValue::count(1));
  other.location = "DE";
  EXPECT_EQ(code_of([&] { series({other}); }), ErrorCode::ContextMismatch);
  EXPECT_EQ(code_of([&] { series({obs(kI1, CaseValue::count(1)), obs(week(2016, 5, 18), CaseValue::count(1))}); }),
            ErrorCode::OverlappingIntervals);
}

TEST(Merge, DisjointUnion) {
  auto m = merge(series({obs(kI1, CaseValue::count(2))}), series({obs(kI2, CaseValue::count(5))}),
                 MergePolicy::ErrorOnConflict);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.value_at(kI1), CaseValue::count(2));
  EXPECT_EQ(m.value_at(kI2), CaseValue::count(5));
}

TEST(Merge, IdempotentDuplicate) {
  auto a = series({obs(kI1, CaseValue::count(2))});
  EXPECT_EQ(merge(a, a, MergePolicy::ErrorOnConflict), a);
}

TEST(Merge, UnknownNeverWins) {
  auto unknown = series({obs(kI1, CaseValue::unknown())});
  auto three = series({obs(kI1, CaseValue::count(3))});
  EXPECT_EQ(merge(unknown, three, MergePolicy::PreferNewer).value_at(kI1), CaseValue::count(3));
  EXPECT_EQ(merge(three, unknown, MergePolicy::PreferNewer).value_at(kI1), CaseValue::count(3));
  EXPECT_EQ(code_of([&] { merge(unknown, three, MergePolicy::ErrorOnConflict); }), ErrorCode::ConflictingValues);
}

TEST(Merge, PartialOverlapRejected) {
  EXPECT_EQ(code_of([] {
              merge(series({obs(kI1, CaseValue::count(2))}), series({obs(week(2016, 5, 18), CaseValue::count(2))}),
                    MergePolicy::PreferNewer);
            }),
            ErrorCode::OverlappingIntervals);
}

TEST(Merge, ContextsMustMatch) {
  auto other = obs(kI1, CaseValue::count(1));
  other.case_type = CaseType::parse("deaths");
  EXPECT_EQ(code_of([&] {
              merge(series({obs(kI1, CaseValue::count(1))}), TimeSeries::make(other.context(), {other}),
                    MergePolicy::PreferNewer);
            }),
            ErrorCode::ContextMismatch);
}

TEST(Revisioned, StepSemantics) {
  RevisionedSeries rs;
  const Date p1 = ymd(2016, 5, 23), p2 = ymd(2016, 5, 30);
  rs.record(p1, series({obs(kI1, CaseValue::count(2))}));
  rs.record(p2, series({obs(kI1, CaseValue::count(4))}));
  EXPECT_EQ(rs.as_of(p1).value_at(kI1), CaseValue::count(2));
  EXPECT_EQ(rs.as_of(ymd(2016, 5, 26)).value_at(kI1), CaseValue::count(2));
  EXPECT_EQ(rs.as_of(p2).value_at(kI1), CaseValue::count(4));
  EXPECT_EQ(rs.as_of(ymd(2017, 1, 1)).value_at(kI1), CaseValue::count(4));
  EXPECT_EQ(code_of([&] { rs.as_of(ymd(2016, 5, 22)); }), ErrorCode::NoSnapshotYet);
  EXPECT_EQ(code_of([&] { rs.record(p2, series({})); }), ErrorCode::RevisionOutOfOrder);
  EXPECT_EQ(code_of([&] { rs.record(p1, series({})); }), ErrorCode::RevisionOutOfOrder);

  auto d = revision_diff(rs, p1, p2);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].interval, kI1);
  EXPECT_EQ(d[0].before, CaseValue::count(2));
  EXPECT_EQ(d[0].after, CaseValue::count(4));
  EXPECT_EQ(code_of([&] { revision_diff(rs, p2, p1); }), ErrorCode::InvalidArgument);
}

TEST(Diff, Cases) {
  std::vector<Observation> a{obs(kI1, CaseValue::count(2))};
  EXPECT_TRUE(diff_observations(a, a).empty());

  std::vector<Observation> unknown{obs(kI1, CaseValue::unknown())};
  std::vector<Observation> three{obs(kI1, CaseValue::count(3))};
  auto d = diff_observations(unknown, three);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].before, CaseValue::unknown());  // present but unknown: a change, not a creation
  EXPECT_EQ(d[0].after, CaseValue::count(3));

  std::vector<Observation> two{obs(kI2, CaseValue::count(5))};
  auto e = diff_observations(a, two);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].interval, kI1);
  EXPECT_FALSE(e[0].after);
  EXPECT_EQ(e[1].interval, kI2);
  EXPECT_FALSE(e[1].before);
}

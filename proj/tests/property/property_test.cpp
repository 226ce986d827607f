#include <gtest/gtest.h>

#include "checks.hpp"
#include "epinorm/manifest.hpp"

using namespace testsupport;

namespace {

const epinorm::Gazetteer& bundled() {
  static const epinorm::Gazetteer g = epinorm::Gazetteer::load(EPINORM_GAZETTEER);
  return g;
}

void expect(const Check& c) { EXPECT_TRUE(c.ok) << c.detail << " (" << c.cases << " cases)"; }

}  // namespace

TEST(IntervalProperties, RoundTripCoverageShift) {
  for (std::uint64_t seed : {1u, 2u, 3u}) expect(interval_round_trip(seed, 1000));
}

TEST(TemporalProperties, NoSilentDisambiguation) { expect(ambiguity(11, 10000)); }
TEST(TemporalProperties, BuddhistYearShift) { expect(buddhist_table_check()); }
TEST(TemporalProperties, ParseFormatIdentity) { expect(parse_format_identity(12, 20000)); }

TEST(CalendarProperties, MmwrPartitionAndSundayLaw) {
  expect(week_partition(epinorm::WeekSystem::Mmwr, {1990, 1, 1}, {2030, 12, 31}));
}
TEST(CalendarProperties, MondayStartPartition) {
  expect(week_partition(epinorm::WeekSystem::MondayStart, {1990, 1, 1}, {2030, 12, 31}));
}
TEST(CalendarProperties, MonthlySchemeTotality) { expect(monthly_totality(1900, 2100)); }

TEST(EncodingProperties, RoundTripAsciiEmbeddingNewlines) { expect(encoding_properties(21, 5000)); }

TEST(ContainerProperties, CanonicalRoundTrip) { expect(container_round_trip(31, 500)); }

TEST(ContainerProperties, TotalOverFixtureCorpus) {
  for (const auto& e : std::filesystem::recursive_directory_iterator(EPINORM_FIXTURES)) {
    if (!e.is_regular_file()) continue;
    const auto bytes = slurp(e.path());
    try {
      auto text = epinorm::detect_and_decode(bytes).text;
      if (e.path().extension() == ".csv") epinorm::read_csv(text);
      if (e.path().extension() == ".json") epinorm::read_json_table(text);
    } catch (const epinorm::Error&) {
      // typed errors are fine
    }
  }
}

TEST(GeoProperties, FoldIdempotence) { expect(fold_idempotence(41, 20000, bundled())); }

TEST(SeriesProperties, MergeCommutesOnDisjointIntervals) { expect(merge_commutes_on_disjoint(51, 500)); }
TEST(SeriesProperties, AsOfMonotoneCompleteness) { expect(as_of_monotone(52, 300)); }
TEST(SeriesProperties, UnknownZeroSeparation) { expect(unknown_zero_separation()); }

TEST(LintProperties, AppendingRowsNeverRemovesFindings) {
  auto m = epinorm::load_manifest(fixture("lint/base.manifest.json"));
  expect(lint_monotone(61, 500, m, bundled()));
}

TEST(LintProperties, Deterministic) {
  auto m = epinorm::load_manifest(fixture("lint/base.manifest.json"));
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    std::string bytes = "date,location,cases\n";
    for (int k = uniform(rng, 0, 5); k > 0; --k) bytes += random_text(rng, true) + "," + random_text(rng, false) + ",1\n";
    ASSERT_EQ(epinorm::report_to_json(epinorm::lint(bytes, m, bundled())),
              epinorm::report_to_json(epinorm::lint(bytes, m, bundled())));
  }
}

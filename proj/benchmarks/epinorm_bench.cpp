#include <benchmark/benchmark.h>

#include <random>

#include <fmt/format.h>

#include "epinorm/containers.hpp"
#include "epinorm/epicalendar.hpp"
#include "epinorm/geo.hpp"
#include "epinorm/intervals.hpp"
#include "epinorm/lint.hpp"
#include "epinorm/pipeline.hpp"
#include "epinorm/temporal.hpp"

using namespace epinorm;

namespace {

const Gazetteer& bundled() {
  static const Gazetteer g = Gazetteer::load(EPINORM_GAZETTEER);
  return g;
}

std::string weekly_csv(int rows) {
  static const char* places[] = {"United States", "Germany", "South Africa", "Japan", "Zurich"};
  std::string s = "date,location,cases\n";
  auto d = CanonicalTimestamp::from_ymd(2000, 1, 2);
  for (int i = 0; i < rows; ++i) {
    s += fmt::format("{},{},{}\n", format_iso8601(d), places[i % 5], i % 97);
    if (i % 5 == 4) d = d.plus(Duration::days(7));
  }
  return s;
}

DatasetManifest table_manifest() {
  return parse_manifest(R"({"container":"csv","interval_type":"leading","period":"P7D","case_type":"confirmed",
                            "case_definition":"lab-confirmed"})");
}

}  // namespace

static void BM_ParseDateIso(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_date("2014-08-07T13:45:10+05:30"));
}
BENCHMARK(BM_ParseDateIso);

static void BM_ParseDateHinted(benchmark::State& state) {
  const LocaleHint hint{DateOrder::MDY, Clock::H12, Calendar::Gregorian};
  for (auto _ : state) benchmark::DoNotOptimize(parse_date("10/3/2015 1:30 PM", hint));
}
BENCHMARK(BM_ParseDateHinted);

static void BM_WeekOf(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> day(0, 15000);
  const Date base = std::chrono::sys_days{std::chrono::year{1990} / 1 / 1};
  for (auto _ : state) benchmark::DoNotOptimize(week_of(base + std::chrono::days{day(rng)}, WeekSystem::Mmwr));
}
BENCHMARK(BM_WeekOf);

static void BM_ReadCsv(benchmark::State& state) {
  const auto text = weekly_csv(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(read_csv(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ReadCsv)->Arg(1000)->Arg(100000);

static void BM_ToIntervalSeries(benchmark::State& state) {
  std::vector<TimestampedPoint> points;
  auto t = CanonicalTimestamp::from_ymd(2000, 1, 2);
  for (int i = 0; i < state.range(0); ++i, t = t.plus(Duration::days(7))) points.push_back({t, CaseValue::count(i)});
  for (auto _ : state) benchmark::DoNotOptimize(to_interval_series(points, IntervalType::TrailingInclusive));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ToIntervalSeries)->Arg(52)->Arg(10000);

static void BM_Resolve(benchmark::State& state) {
  const auto& g = bundled();
  for (auto _ : state) benchmark::DoNotOptimize(g.resolve("Zürich"));
}
BENCHMARK(BM_Resolve);

static void BM_Normalize(benchmark::State& state) {
  const auto text = weekly_csv(static_cast<int>(state.range(0)));
  const auto m = table_manifest();
  const auto& g = bundled();
  for (auto _ : state) benchmark::DoNotOptimize(normalize(text, m, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Normalize)->Arg(1000)->Arg(50000);

static void BM_Lint(benchmark::State& state) {
  const auto text = weekly_csv(static_cast<int>(state.range(0)));
  const auto m = table_manifest();
  const auto& g = bundled();
  for (auto _ : state) benchmark::DoNotOptimize(lint(text, m, g));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lint)->Arg(1000)->Arg(50000);
BENCHMARK_MAIN();

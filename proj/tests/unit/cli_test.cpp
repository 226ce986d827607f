#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using testsupport::fixture;
using testsupport::slurp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.insert(args.begin(), "epinorm");
  int code = epinorm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string f(const char* name) { return fixture(name).string(); }

}  // namespace

TEST(Cli, Epiweek) {
  auto r = cli({"epiweek", "2016-05-15"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2016, week 20"), std::string::npos);
  auto m = cli({"epiweek", "2016-05-15", "--system", "monday_start", "--format", "json"});
  EXPECT_NE(m.out.find("19"), std::string::npos);
}

TEST(Cli, NormalizeIsDeterministic) {
  auto a = cli({"normalize", f("countries.csv"), "-m", f("countries.manifest.json"), "--format", "json"});
  auto b = cli({"normalize", f("countries.csv"), "-m", f("countries.manifest.json"), "--format", "json"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"DE\""), std::string::npos);
}

TEST(Cli, LintExitCodes) {
  EXPECT_EQ(cli({"lint", f("lint/clean_table.csv"), "-m", f("lint/base.manifest.json")}).code, 0);
  EXPECT_EQ(cli({"lint", f("lint/r_iso3166.csv"), "-m", f("lint/base.manifest.json")}).code, 1);
  EXPECT_EQ(cli({"lint", f("lint/r_unknown.csv"), "-m", f("lint/base.manifest.json")}).code, 2);
}

TEST(Cli, UsageAndFatalErrors) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"normalize", f("countries.csv")}).code, 2);
  auto r = cli({"normalize", f("weekly_us.csv"), "-m", f("no_interval.manifest.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("epinorm: error:"), std::string::npos);
}

TEST(Cli, NoPartialOutputOnFailure) {
  testsupport::TempDir dir("cli");
  auto out = dir / "out.csv";
  auto bad = dir / "bad.csv";
  {
    std::ofstream(bad) << "date,location,cases\n2013-11-05,Germany,3\n2013-11-12,Germany,lots\n";
  }
  auto r = cli({"normalize", bad.string(), "-m", f("countries.manifest.json"), "-o", out.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(std::filesystem::exists(out));

  std::ofstream(out) << "previous";
  r = cli({"normalize", bad.string(), "-m", f("countries.manifest.json"), "-o", out.string()});
  EXPECT_EQ(slurp(out), "previous");
}

TEST(Cli, StoreCommands) {
  auto asof = cli({"asof", f("store"), "2016-05-27"});
  EXPECT_EQ(asof.code, 0) << asof.err;
  auto diff = cli({"diff", f("store"), "2016-05-23", "2016-05-30"});
  EXPECT_EQ(diff.code, 0) << diff.err;
  EXPECT_NE(diff.out.find("\"before\""), std::string::npos);
  EXPECT_EQ(cli({"asof", f("store"), "2016-05-01"}).code, 2);
  auto merged = cli({"merge", f("snapshot_p1.json"), f("snapshot_p2.json"), "--policy", "prefer_newer"});
  EXPECT_EQ(merged.code, 0) << merged.err;
  EXPECT_EQ(cli({"merge", f("snapshot_p1.json"), f("snapshot_p2.json"), "--policy", "error_on_conflict"}).code, 2);
}

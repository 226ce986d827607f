#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "epinorm/containers.hpp"
#include "epinorm/epicalendar.hpp"
#include "epinorm/error.hpp"
#include "epinorm/geo.hpp"
#include "epinorm/lint.hpp"
#include "epinorm/manifest.hpp"
#include "epinorm/pipeline.hpp"
#include "epinorm/store.hpp"

namespace epinorm::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string second;
  std::string store;
  std::string date;
  std::string date2;
  std::string manifest;
  std::string output;
  std::string format;
  std::string gazetteer;
  std::string system = "mmwr";
  std::string policy = "prefer_newer";
};

/// Where data goes: --output (written atomically once complete) or `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : path_(path), out_(out) {}
  void write(const std::string& data) const {
    if (path_.empty()) {
      out_ << data;
    } else {
      write_file_atomically(path_, data);
    }
  }

 private:
  std::string path_;
  std::ostream& out_;
};

ContainerKind kind_for(const std::string& format, const std::string& path, ContainerKind fallback) {
  if (!format.empty()) return parse_container_kind(format);
  auto ext = fs::path(path).extension().string();
  if (ext == ".csv") return ContainerKind::Csv;
  if (ext == ".json") return ContainerKind::Json;
  return fallback;
}

std::optional<DatasetManifest> manifest_of(const Options& o) {
  if (o.manifest.empty()) return std::nullopt;
  return load_manifest(o.manifest);
}

fs::path gazetteer_path(const Options& o, const std::optional<DatasetManifest>& m) {
  if (!o.gazetteer.empty()) return o.gazetteer;
  if (m && m->gazetteer) return *m->gazetteer;
  if (const char* env = std::getenv("EPINORM_GAZETTEER"); env && *env) return env;
  fs::path built = EPINORM_GAZETTEER_SOURCE;
  if (fs::exists(built)) return built;
  return EPINORM_GAZETTEER_INSTALLED;
}

CanonicalDocument read_document(const std::string& path) {
  return read_canonical(read_file(path), kind_for("", path, ContainerKind::Json));
}

/// Canonical documents handed to merge/publish must match what the manifest
/// declares, when one is given.
void check_against_manifest(const CanonicalDocument& doc, const std::optional<DatasetManifest>& m,
                            const std::string& path) {
  if (!m) return;
  if (m->interval_type && doc.metadata.interval_type != m->interval_type) {
    throw Error(ErrorCode::ContextMismatch,
                fmt::format("{} declares interval type {}, manifest declares {}", path,
                            to_string(*doc.metadata.interval_type), to_string(*m->interval_type)));
  }
  if (m->case_definition && doc.metadata.case_definition != m->case_definition) {
    throw Error(ErrorCode::ContextMismatch, fmt::format("{} has a different case definition than the manifest", path));
  }
}

int cmd_normalize(const Options& o, std::ostream& out, std::ostream& err) {
  auto m = load_manifest(o.manifest);
  require_normalizable(m);
  const auto kind = kind_for(o.format, o.output, ContainerKind::Csv);
  std::optional<Gazetteer> g;
  if (m.layout == Layout::Table) g = Gazetteer::load(gazetteer_path(o, m));
  auto result = normalize(read_file(o.input), m, g ? *g : Gazetteer({}), fs::path(o.input).filename().string());
  const auto text = write_canonical(result.document, kind);
  Sink(o.output, out).write(text);
  for (const auto& w : result.warnings) fmt::print(err, "epinorm: warning: {}\n", w);
  std::size_t series = group_series(result.document.observations).size();
  fmt::print(err, "epinorm: {} observation(s) in {} series{}\n", result.document.observations.size(), series,
             o.output.empty() ? "" : fmt::format(" written to {}", o.output));
  return result.warnings.empty() ? kOk : kWarnings;
}

int cmd_lint(const Options& o, std::ostream& out, std::ostream& err) {
  auto m = load_manifest(o.manifest);
  auto g = Gazetteer::load(gazetteer_path(o, m));
  auto report = lint(read_file(o.input), m, g, o.input);
  std::string text;
  if (o.format.empty() || o.format == "text") {
    text = report_to_text(report);
  } else if (o.format == "json") {
    text = report_to_json(report);
  } else if (o.format == "csv") {
    text = report_to_csv(report);
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown lint format '{}'; expected text, json or csv", o.format));
  }
  Sink(o.output, out).write(text);
  if (!o.output.empty() || o.format == "json" || o.format == "csv") {
    fmt::print(err, "epinorm: {} error(s), {} warning(s)\n", report.errors(), report.warnings());
  }
  return report.exit_code();
}

int cmd_asof(const Options& o, std::ostream& out, std::ostream&) {
  auto m = manifest_of(o);
  auto store = RevisionStore::open(o.store);
  auto doc = store.as_of(parse_calendar_date(o.date));
  check_against_manifest(doc, m, o.store);
  Sink(o.output, out).write(write_canonical(doc, kind_for(o.format, o.output, ContainerKind::Json)));
  return kOk;
}

int cmd_epiweek(const Options& o, std::ostream& out, std::ostream&) {
  const auto system = parse_week_system(o.system);
  const auto week = week_of(parse_date(o.date), system);
  const auto span = week_interval(week);
  std::string text;
  if (o.format.empty() || o.format == "text") {
    text = week_label(week) + "\n";
  } else if (o.format == "json") {
    ordered_json j;
    j["system"] = std::string(to_string(system));
    j["year"] = week.year;
    j["week"] = week.week;
    j["label"] = week_label(week);
    j["interval_start"] = format_iso8601(span.start());
    j["interval_end"] = format_iso8601(span.end());
    text = j.dump(2) + "\n";
  } else if (o.format == "csv") {
    text = fmt::format("system,year,week,interval_start,interval_end\n{},{},{},{},{}\n", to_string(system), week.year,
                       week.week, format_iso8601(span.start()), format_iso8601(span.end()));
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown epiweek format '{}'; expected text, json or csv", o.format));
  }
  Sink(o.output, out).write(text);
  return kOk;
}

int cmd_merge(const Options& o, std::ostream& out, std::ostream&) {
  auto m = manifest_of(o);
  const auto older = read_document(o.input);
  const auto newer = read_document(o.second);
  check_against_manifest(older, m, o.input);
  check_against_manifest(newer, m, o.second);
  if (older.metadata.interval_type != newer.metadata.interval_type) {
    throw Error(ErrorCode::ContextMismatch, "documents declare different interval types");
  }
  const auto policy = parse_merge_policy(o.policy);

  std::map<SeriesContext, TimeSeries> merged;
  for (auto& s : group_series(older.observations)) merged.emplace(s.context(), std::move(s));
  for (auto& s : group_series(newer.observations)) {
    auto it = merged.find(s.context());
    if (it == merged.end()) {
      merged.emplace(s.context(), std::move(s));
    } else {
      it->second = merge(it->second, s, policy);
    }
  }
  CanonicalDocument doc;
  doc.metadata = newer.metadata;
  for (const auto& [_, s] : merged) {
    doc.observations.insert(doc.observations.end(), s.observations().begin(), s.observations().end());
  }
  Sink(o.output, out).write(write_canonical(doc, kind_for(o.format, o.output, ContainerKind::Json)));
  return kOk;
}

std::string value_text(const std::optional<CaseValue>& v) {
  if (!v) return "";
  return v->is_unknown() ? std::string(kUnknownToken) : v->to_string();
}

ordered_json value_json(const CaseValue& v) { return v.is_unknown() ? ordered_json(nullptr) : ordered_json(v.value()); }

int cmd_diff(const Options& o, std::ostream& out, std::ostream&) {
  auto m = manifest_of(o);
  auto store = RevisionStore::open(o.store);
  const auto p1 = parse_calendar_date(o.date);
  const auto p2 = parse_calendar_date(o.date2);
  if (m) {
    check_against_manifest(store.as_of(p1), m, o.store);
    check_against_manifest(store.as_of(p2), m, o.store);
  }
  const auto changes = store.diff(p1, p2);
  std::string text;
  if (o.format.empty() || o.format == "json") {
    auto arr = ordered_json::array();
    for (const auto& c : changes) {
      ordered_json j;
      j["location_code"] = c.context.location;
      j["demographic"] = c.context.demographic;
      j["case_type"] = c.context.case_type.to_string();
      j["interval_start"] = format_iso8601(c.interval.start());
      j["interval_end"] = format_iso8601(c.interval.end());
      // An absent key means the interval was not in that snapshot.
      if (c.before) j["before"] = value_json(*c.before);
      if (c.after) j["after"] = value_json(*c.after);
      arr.push_back(std::move(j));
    }
    text = arr.dump(2) + "\n";
  } else if (o.format == "csv") {
    text = "location_code,demographic,case_type,interval_start,interval_end,before,after\n";
    for (const auto& c : changes) {
      text += fmt::format("{},{},{},{},{},{},{}\n", c.context.location, c.context.demographic,
                          c.context.case_type.to_string(), format_iso8601(c.interval.start()),
                          format_iso8601(c.interval.end()), value_text(c.before), value_text(c.after));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown diff format '{}'; expected json or csv", o.format));
  }
  Sink(o.output, out).write(text);
  return kOk;
}

int cmd_publish(const Options& o, std::ostream&, std::ostream& err) {
  auto m = manifest_of(o);
  const auto doc = read_document(o.input);
  check_against_manifest(doc, m, o.input);
  auto store = RevisionStore::open_or_create(o.store);
  const auto date = parse_calendar_date(o.date);
  store.publish(date, doc);
  fmt::print(err, "epinorm: published {} observation(s) as of {}\n", doc.observations.size(), format_date(date));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalize and lint epidemiological case-count time series", "epinorm"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool manifest_required) {
    auto* opt = c->add_option("--manifest,-m", o.manifest, "Dataset manifest (JSON)");
    if (manifest_required) opt->required()->check(CLI::ExistingFile);
    c->add_option("--output,-o", o.output, "Write data here instead of standard output");
  };

  auto* normalize = app.add_subcommand("normalize", "Convert a source file to the canonical form");
  normalize->add_option("input", o.input, "Source file")->required()->check(CLI::ExistingFile);
  common(normalize, true);
  normalize->add_option("--format,-f", o.format, "csv or json (default: from --output, else csv)");
  normalize->add_option("--gazetteer,-g", o.gazetteer, "Gazetteer JSON");

  auto* lint_cmd = app.add_subcommand("lint", "Check a source file against publishing recommendations");
  lint_cmd->add_option("input", o.input, "Source file")->required()->check(CLI::ExistingFile);
  common(lint_cmd, true);
  lint_cmd->add_option("--format,-f", o.format, "text, json or csv (default text)");
  lint_cmd->add_option("--gazetteer,-g", o.gazetteer, "Gazetteer JSON");

  auto* asof = app.add_subcommand("asof", "Print the snapshot in effect on a publication date");
  asof->add_option("store", o.store, "Revision store directory")->required();
  asof->add_option("date", o.date, "Publication date, YYYY-MM-DD")->required();
  common(asof, false);
  asof->add_option("--format,-f", o.format, "json or csv (default json)");

  auto* epiweek = app.add_subcommand("epiweek", "Print the epidemiological week of a date");
  epiweek->add_option("date", o.date, "Date")->required();
  epiweek->add_option("--system,-s", o.system, "mmwr or monday_start")->capture_default_str();
  common(epiweek, false);
  epiweek->add_option("--format,-f", o.format, "text, json or csv (default text)");

  auto* merge_cmd = app.add_subcommand("merge", "Merge two canonical documents");
  merge_cmd->add_option("older", o.input, "Older canonical document")->required()->check(CLI::ExistingFile);
  merge_cmd->add_option("newer", o.second, "Newer canonical document")->required()->check(CLI::ExistingFile);
  merge_cmd->add_option("--policy,-p", o.policy, "prefer_newer or error_on_conflict")->capture_default_str();
  common(merge_cmd, false);
  merge_cmd->add_option("--format,-f", o.format, "csv or json (default: from --output, else json)");

  auto* diff = app.add_subcommand("diff", "List revisions between two publication dates");
  diff->add_option("store", o.store, "Revision store directory")->required();
  diff->add_option("p1", o.date, "Earlier publication date")->required();
  diff->add_option("p2", o.date2, "Later publication date")->required();
  common(diff, false);
  diff->add_option("--format,-f", o.format, "json or csv (default json)");

  auto* publish = app.add_subcommand("publish", "Append a canonical document to a revision store");
  publish->add_option("store", o.store, "Revision store directory")->required();
  publish->add_option("input", o.input, "Canonical document")->required()->check(CLI::ExistingFile);
  publish->add_option("--date,-d", o.date, "Publication date, YYYY-MM-DD")->required();
  common(publish, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kErrors;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(o, out, err);
    if (lint_cmd->parsed()) return cmd_lint(o, out, err);
    if (asof->parsed()) return cmd_asof(o, out, err);
    if (epiweek->parsed()) return cmd_epiweek(o, out, err);
    if (merge_cmd->parsed()) return cmd_merge(o, out, err);
    if (diff->parsed()) return cmd_diff(o, out, err);
    if (publish->parsed()) return cmd_publish(o, out, err);
  } catch (const Error& e) {
    fmt::print(err, "epinorm: error: {}: {}\n", error_code_name(e.code()), e.what());
    return kErrors;
  } catch (const std::exception& e) {
    fmt::print(err, "epinorm: error: {}\n", e.what());
    return kErrors;
  }
  return kErrors;
}

}  // namespace epinorm::cli

#include "epinorm/geo.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "epinorm/error.hpp"

namespace epinorm {

namespace {

using json = nlohmann::json;

// Base-letter spellings for U+00C0..U+017F; nullptr keeps the character.
constexpr std::array<const char*, 0x180 - 0xC0> kFoldTable = {
    // U+00C0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00D0
    "d", "n", "o", "o", "o", "o", "o", nullptr, "o", "u", "u", "u", "u", "y", "th", "ss",
    // U+00E0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00F0
    "d", "n", "o", "o", "o", "o", "o", nullptr, "o", "u", "u", "u", "u", "y", "th", "y",
    // U+0100
    "a", "a", "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d",
    // U+0110
    "d", "d", "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g",
    // U+0120
    "g", "g", "g", "g", "h", "h", "h", "h", "i", "i", "i", "i", "i", "i", "i", "i",
    // U+0130
    "i", "i", "ij", "ij", "j", "j", "k", "k", "k", "l", "l", "l", "l", "l", "l", "l",
    // U+0140
    "l", "l", "l", "n", "n", "n", "n", "n", "n", "n", "n", "n", "o", "o", "o", "o",
    // U+0150
    "o", "o", "oe", "oe", "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s",
    // U+0160
    "s", "s", "t", "t", "t", "t", "t", "t", "u", "u", "u", "u", "u", "u", "u", "u",
    // U+0170
    "u", "u", "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s",
};

// Decodes one UTF-8 sequence at `i`; returns nullopt (and advances one byte)
// on malformed input.
std::optional<char32_t> next_code_point(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
  if (len == 0 || i + len > s.size()) {
    ++i;
    return std::nullopt;
  }
  char32_t cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return std::nullopt;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

std::optional<Date> date_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::GazetteerInvalid, fmt::format("'{}' must be a date string", key));
  try {
    return parse_calendar_date(it->get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::GazetteerInvalid, e.what());
  }
}

LocationRef record_from_json(const json& j, std::size_t index) {
  static const std::set<std::string, std::less<>> kKeys = {"code",     "name",       "aliases",  "valid_from",
                                                           "valid_to", "population", "extension"};
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::GazetteerInvalid, fmt::format("gazetteer record {}: {}", index, why));
  };
  if (!j.is_object()) fail("not an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.contains(key)) fail(fmt::format("unknown key '{}'", key));
  }
  LocationRef ref;
  if (!j.contains("code") || !j["code"].is_string()) fail("missing string 'code'");
  if (!j.contains("name") || !j["name"].is_string()) fail("missing string 'name'");
  ref.code = j["code"].get<std::string>();
  ref.canonical_name = j["name"].get<std::string>();
  if (auto it = j.find("aliases"); it != j.end()) {
    if (!it->is_array()) fail("'aliases' must be an array");
    for (const auto& a : *it) {
      if (!a.is_string()) fail("aliases must be strings");
      ref.aliases.push_back(a.get<std::string>());
    }
  }
  ref.valid_from = date_field(j, "valid_from");
  ref.valid_to = date_field(j, "valid_to");
  if (auto it = j.find("population"); it != j.end() && !it->is_null()) {
    if (!it->is_object() || !it->contains("count") || !(*it)["count"].is_number_unsigned()) {
      fail("'population' needs a non-negative integer 'count'");
    }
    Population p;
    p.count = (*it)["count"].get<std::uint64_t>();
    p.as_of = date_field(*it, "as_of");
    ref.population = p;
  }
  if (auto it = j.find("extension"); it != j.end()) {
    if (!it->is_boolean()) fail("'extension' must be a boolean");
    ref.extension = it->get<bool>();
  }
  return ref;
}

}  // namespace

std::string fold_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  auto emit = [&](std::string_view piece) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(piece);
  };
  std::size_t i = 0;
  while (i < name.size()) {
    const std::size_t start = i;
    const auto cp = next_code_point(name, i);
    if (!cp) {
      emit(name.substr(start, 1));
      continue;
    }
    if (*cp < 0x80) {
      const auto c = static_cast<unsigned char>(*cp);
      if (std::isspace(c)) {
        pending_space = true;
      } else {
        const char lc = static_cast<char>(std::tolower(c));
        emit(std::string_view(&lc, 1));
      }
    } else if (*cp >= 0x300 && *cp <= 0x36F) {
      // combining diacritical marks
    } else if (*cp == 0xA0) {
      pending_space = true;
    } else if (*cp >= 0xC0 && *cp < 0x180 && kFoldTable[*cp - 0xC0] != nullptr) {
      emit(kFoldTable[*cp - 0xC0]);
    } else {
      emit(name.substr(start, i - start));
    }
  }
  return out;
}

Gazetteer::Gazetteer(std::vector<LocationRef> entries) : entries_(std::move(entries)) {
  std::map<std::string, std::vector<std::size_t>> by_code;
  for (std::size_t idx = 0; idx < entries_.size(); ++idx) {
    const auto& e = entries_[idx];
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::GazetteerInvalid, fmt::format("entry {} ({}): {}", idx, e.code, why));
    };
    if (e.code.empty()) fail("empty code");
    const auto name_key = fold_name(e.canonical_name);
    if (name_key.empty()) fail("empty name");
    if (e.valid_from && e.valid_to && !(*e.valid_from < *e.valid_to)) fail("valid_from must precede valid_to");

    std::set<std::string> keys{name_key};
    for (const auto& a : e.aliases) {
      auto k = fold_name(a);
      if (k.empty()) fail("empty alias");
      if (!keys.insert(k).second) fail(fmt::format("alias '{}' folds onto another name of the same entry", a));
    }
    by_code[e.code].push_back(idx);

    auto add = [&](const std::string& key, MatchKind kind) {
      auto& list = index_[key];
      for (auto& m : list) {
        if (m.index == idx) {
          m.kind = std::min(m.kind, kind);
          return;
        }
      }
      list.push_back({idx, kind});
    };
    add(name_key, MatchKind::Canonical);
    add(fold_name(e.code), MatchKind::Code);
    for (const auto& a : e.aliases) add(fold_name(a), MatchKind::Alias);
  }

  for (const auto& [code, versions] : by_code) {
    for (std::size_t a = 0; a < versions.size(); ++a) {
      for (std::size_t b = a + 1; b < versions.size(); ++b) {
        const auto& x = entries_[versions[a]];
        const auto& y = entries_[versions[b]];
        const bool disjoint = (x.valid_to && y.valid_from && *x.valid_to <= *y.valid_from) ||
                              (y.valid_to && x.valid_from && *y.valid_to <= *x.valid_from);
        if (!disjoint) {
          throw Error(ErrorCode::GazetteerInvalid, fmt::format("versions of {} have overlapping validity", code));
        }
      }
    }
  }
}

Gazetteer Gazetteer::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::GazetteerInvalid, fmt::format("gazetteer is not valid JSON: {}", e.what()));
  }
  if (!doc.is_array()) throw Error(ErrorCode::GazetteerInvalid, "gazetteer must be a JSON array");
  std::vector<LocationRef> entries;
  entries.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) entries.push_back(record_from_json(doc[i], i));
  return Gazetteer(std::move(entries));
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, fmt::format("cannot open gazetteer '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

const LocationRef& Gazetteer::resolve(std::string_view name, std::optional<Date> as_of) const {
  const auto key = fold_name(name);
  if (key.empty()) throw Error(ErrorCode::InvalidArgument, "location name is empty");
  const auto it = index_.find(key);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLocation, fmt::format("unknown location '{}'", name));

  std::vector<Match> candidates;
  for (const auto& m : it->second) {
    if (!as_of || entries_[m.index].valid_on(*as_of)) candidates.push_back(m);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::NoVersionForDate,
                fmt::format("'{}' has no version valid on {}", name, format_date(*as_of)));
  }
  const auto best = std::min_element(candidates.begin(), candidates.end(), [](const Match& a, const Match& b) {
                      return a.kind < b.kind;
                    })->kind;
  std::erase_if(candidates, [best](const Match& m) { return m.kind != best; });

  std::set<std::string> codes;
  for (const auto& m : candidates) codes.insert(entries_[m.index].code);
  if (codes.size() > 1) {
    throw Error(ErrorCode::AmbiguousLocation,
                fmt::format("'{}' matches several places: {}", name, fmt::join(codes, ", ")));
  }
  // Same code, several versions (only possible without as_of): latest wins.
  const auto latest = std::max_element(candidates.begin(), candidates.end(), [&](const Match& a, const Match& b) {
    const auto& x = entries_[a.index];
    const auto& y = entries_[b.index];
    if (!x.valid_to) return false;
    if (!y.valid_to) return true;
    return *x.valid_to < *y.valid_to;
  });
  return entries_[latest->index];
}

double incidence_rate(std::uint64_t cases, std::uint64_t population) {
  if (population == 0) throw Error(ErrorCode::ZeroPopulation, "population must be positive");
  constexpr std::uint64_t kPer = 100000;
  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
  // One rounding step when both operands are exact doubles.
  if (cases < kExact / kPer && population < kExact) {
    return static_cast<double>(cases * kPer) / static_cast<double>(population);
  }
  return static_cast<double>(static_cast<long double>(cases) * kPer / static_cast<long double>(population));
}

}  // namespace epinorm

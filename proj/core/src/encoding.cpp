#include "epinorm/encoding.hpp"

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

#include "epinorm/error.hpp"

namespace epinorm {

namespace {

constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

bool is_ascii(std::string_view bytes) {
  return std::all_of(bytes.begin(), bytes.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

std::string canonical_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

[[noreturn]] void mismatch(Encoding declared, std::size_t offset) {
  throw Error(ErrorCode::DeclaredEncodingMismatch,
              fmt::format("input is not valid {}: byte offset {}", to_string(declared), offset));
}

}  // namespace

std::string_view to_string(Encoding e) noexcept {
  switch (e) {
    case Encoding::Ascii: return "ASCII";
    case Encoding::Latin1: return "ISO-8859-1";
    case Encoding::Utf8: return "UTF-8";
  }
  return "UTF-8";
}

std::string_view to_string(NewlineStyle s) noexcept {
  switch (s) {
    case NewlineStyle::None: return "none";
    case NewlineStyle::LF: return "LF";
    case NewlineStyle::CRLF: return "CRLF";
    case NewlineStyle::Mixed: return "mixed";
  }
  return "none";
}

Encoding parse_encoding_name(std::string_view name) {
  const auto n = canonical_name(name);
  if (n == "utf8") return Encoding::Utf8;
  if (n == "ascii" || n == "usascii") return Encoding::Ascii;
  if (n == "iso88591" || n == "latin1" || n == "l1") return Encoding::Latin1;
  throw Error(ErrorCode::UnsupportedEncoding,
              fmt::format("unsupported encoding '{}'; expected UTF-8, ISO-8859-1 or ASCII", name));
}

std::optional<std::size_t> first_invalid_utf8(std::string_view bytes) noexcept {
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char b0 = p[i];
    if (b0 < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    unsigned char lo = 0x80;
    unsigned char hi = 0xBF;
    if (b0 >= 0xC2 && b0 <= 0xDF) {
      len = 2;
    } else if (b0 >= 0xE0 && b0 <= 0xEF) {
      len = 3;
      if (b0 == 0xE0) lo = 0xA0;  // overlong
      if (b0 == 0xED) hi = 0x9F;  // surrogates
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
      len = 4;
      if (b0 == 0xF0) lo = 0x90;  // overlong
      if (b0 == 0xF4) hi = 0x8F;  // above U+10FFFF
    } else {
      return i;
    }
    if (i + len > n) return i;
    if (p[i + 1] < lo || p[i + 1] > hi) return i;
    for (std::size_t k = 2; k < len; ++k) {
      if (p[i + k] < 0x80 || p[i + k] > 0xBF) return i;
    }
    i += len;
  }
  return std::nullopt;
}

std::string latin1_to_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size() + bytes.size() / 8);
  for (char c : bytes) {
    const auto b = static_cast<unsigned char>(c);
    if (b < 0x80) {
      out.push_back(c);
    } else {
      out.push_back(static_cast<char>(0xC0 | (b >> 6)));
      out.push_back(static_cast<char>(0x80 | (b & 0x3F)));
    }
  }
  return out;
}

std::pair<std::string, NewlineStyle> normalize_newlines(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t crlf = 0;
  std::size_t lf = 0;
  std::size_t cr = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') {
        ++crlf;
        ++i;
      } else {
        ++cr;
      }
      out.push_back('\n');
    } else {
      if (c == '\n') ++lf;
      out.push_back(c);
    }
  }
  NewlineStyle style = NewlineStyle::None;
  if (cr > 0 || (crlf > 0 && lf > 0)) {
    style = NewlineStyle::Mixed;
  } else if (crlf > 0) {
    style = NewlineStyle::CRLF;
  } else if (lf > 0) {
    style = NewlineStyle::LF;
  }
  return {std::move(out), style};
}

DecodedText detect_and_decode(std::string_view bytes, std::optional<Encoding> declared) {
  DecodedText out;
  std::string text;

  auto take_utf8 = [&](std::string_view b) {
    if (b.substr(0, kUtf8Bom.size()) == kUtf8Bom) {
      out.had_bom = true;
      b.remove_prefix(kUtf8Bom.size());
    }
    text.assign(b);
  };

  if (declared) {
    out.source_encoding = *declared;
    switch (*declared) {
      case Encoding::Utf8:
        if (auto bad = first_invalid_utf8(bytes)) mismatch(*declared, *bad);
        take_utf8(bytes);
        break;
      case Encoding::Ascii: {
        auto it = std::find_if(bytes.begin(), bytes.end(),
                               [](char c) { return static_cast<unsigned char>(c) >= 0x80; });
        if (it != bytes.end()) mismatch(*declared, static_cast<std::size_t>(it - bytes.begin()));
        text.assign(bytes);
        break;
      }
      case Encoding::Latin1:
        text = latin1_to_utf8(bytes);
        break;
    }
  } else if (bytes.empty()) {
    out.source_encoding = Encoding::Utf8;
  } else if (is_ascii(bytes)) {
    out.source_encoding = Encoding::Ascii;
    text.assign(bytes);
  } else if (is_valid_utf8(bytes)) {
    out.source_encoding = Encoding::Utf8;
    take_utf8(bytes);
  } else {
    out.source_encoding = Encoding::Latin1;
    text = latin1_to_utf8(bytes);
  }

  auto [normalized, style] = normalize_newlines(text);
  out.text = std::move(normalized);
  out.newline_style_found = style;
  return out;
}

}  // namespace epinorm

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace epinorm {

// Raw input bytes are carried in std::string / std::string_view; decoded text
// is always UTF-8 with LF line endings.

enum class Encoding { Ascii, Latin1, Utf8 };
enum class NewlineStyle { None, LF, CRLF, Mixed };

std::string_view to_string(Encoding e) noexcept;
std::string_view to_string(NewlineStyle s) noexcept;

/// Accepts the usual spellings ("UTF-8", "utf8", "ISO-8859-1", "latin1",
/// "US-ASCII", ...). Anything else throws UnsupportedEncoding.
Encoding parse_encoding_name(std::string_view name);

struct DecodedText {
  std::string text;
  Encoding source_encoding = Encoding::Utf8;
  bool had_bom = false;
  NewlineStyle newline_style_found = NewlineStyle::None;

  bool mixed_newlines() const noexcept { return newline_style_found == NewlineStyle::Mixed; }
};

/// Decodes `bytes` to UTF-8 text with LF line endings.
///
/// With a declaration the bytes must decode strictly under it, otherwise
/// DeclaredEncodingMismatch is thrown. Without one: empty input is UTF-8,
/// non-empty 7-bit input is ASCII, other valid UTF-8 is UTF-8, and everything
/// else is read as ISO-8859-1. A UTF-8 byte-order mark is stripped.
DecodedText detect_and_decode(std::string_view bytes, std::optional<Encoding> declared = std::nullopt);

/// Offset of the first byte that breaks UTF-8 well-formedness (overlong forms,
/// surrogates and code points above U+10FFFF included), or nullopt.
std::optional<std::size_t> first_invalid_utf8(std::string_view bytes) noexcept;
inline bool is_valid_utf8(std::string_view bytes) noexcept { return !first_invalid_utf8(bytes); }

std::string latin1_to_utf8(std::string_view bytes);

/// CRLF and lone CR become LF. Returns the rewritten text and the style found.
std::pair<std::string, NewlineStyle> normalize_newlines(std::string_view text);

}  // namespace epinorm

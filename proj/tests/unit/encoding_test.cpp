#include <gtest/gtest.h>

#include "epinorm/encoding.hpp"
#include "epinorm/error.hpp"
#include "support.hpp"

using namespace epinorm;
using testsupport::fixture;
using testsupport::slurp;

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

}  // namespace

TEST(Encoding, AsciiDeclaredUtf8) {
  auto d = detect_and_decode("date,cases\n", Encoding::Utf8);
  EXPECT_EQ(d.text, "date,cases\n");
  EXPECT_EQ(d.source_encoding, Encoding::Utf8);
  EXPECT_EQ(d.newline_style_found, NewlineStyle::LF);
}

TEST(Encoding, EmptyUndeclared) {
  auto d = detect_and_decode("");
  EXPECT_EQ(d.text, "");
  EXPECT_EQ(d.source_encoding, Encoding::Utf8);
  EXPECT_EQ(d.newline_style_found, NewlineStyle::None);
}

TEST(Encoding, SingleLatin1Byte) {
  auto d = detect_and_decode("\xFC");
  EXPECT_EQ(d.text, "\xC3\xBC");  // ü
  EXPECT_EQ(d.source_encoding, Encoding::Latin1);
}

TEST(Encoding, InvalidContinuationDeclaredUtf8) {
  EXPECT_EQ(code_of([] { detect_and_decode("\xC3\x28", Encoding::Utf8); }), ErrorCode::DeclaredEncodingMismatch);
}

TEST(Encoding, UndeclaredSevenBitIsAscii) {
  auto d = detect_and_decode("a,b\n");
  EXPECT_EQ(d.source_encoding, Encoding::Ascii);
  EXPECT_EQ(d.text, "a,b\n");
}

TEST(Encoding, BomStripped) {
  auto d = detect_and_decode("\xEF\xBB\xBF" "a\n");
  EXPECT_TRUE(d.had_bom);
  EXPECT_EQ(d.text, "a\n");
  EXPECT_EQ(d.source_encoding, Encoding::Utf8);
}

TEST(Encoding, DeclaredAsciiRejectsHighBytes) {
  EXPECT_EQ(code_of([] { detect_and_decode("Z\xC3\xBCrich", Encoding::Ascii); }), ErrorCode::DeclaredEncodingMismatch);
}

TEST(Encoding, EncodingNames) {
  EXPECT_EQ(parse_encoding_name("UTF-8"), Encoding::Utf8);
  EXPECT_EQ(parse_encoding_name("utf8"), Encoding::Utf8);
  EXPECT_EQ(parse_encoding_name("ISO-8859-1"), Encoding::Latin1);
  EXPECT_EQ(parse_encoding_name("latin1"), Encoding::Latin1);
  EXPECT_EQ(parse_encoding_name("US-ASCII"), Encoding::Ascii);
  EXPECT_EQ(code_of([] { parse_encoding_name("Shift_JIS"); }), ErrorCode::UnsupportedEncoding);
}

TEST(Encoding, Utf8Validator) {
  EXPECT_FALSE(first_invalid_utf8("Z\xC3\xBCrich"));
  EXPECT_EQ(first_invalid_utf8("ab\xFC"), 2u);
  EXPECT_EQ(first_invalid_utf8("\xC0\xAF"), 0u);          // overlong '/'
  EXPECT_EQ(first_invalid_utf8("\xED\xA0\x80"), 0u);      // surrogate
  EXPECT_EQ(first_invalid_utf8("\xF4\x90\x80\x80"), 0u);  // above U+10FFFF
  EXPECT_EQ(first_invalid_utf8("a\xE2\x82"), 1u);         // truncated
  EXPECT_FALSE(first_invalid_utf8("\xF0\x9F\x98\x80"));   // 4-byte form
}

TEST(Encoding, Latin1TableMapping) {
  // ISO-8859-1 maps byte b to U+00b; compare against a hand-built encoding.
  for (int b = 0; b < 256; ++b) {
    std::string expected;
    if (b < 0x80) {
      expected.push_back(static_cast<char>(b));
    } else {
      expected.push_back(static_cast<char>(0xC0 | (b >> 6)));
      expected.push_back(static_cast<char>(0x80 | (b & 0x3F)));
    }
    EXPECT_EQ(latin1_to_utf8(std::string(1, static_cast<char>(b))), expected) << b;
  }
}

TEST(Encoding, Newlines) {
  EXPECT_EQ(normalize_newlines("a\r\nb\r\n"), std::make_pair(std::string("a\nb\n"), NewlineStyle::CRLF));
  EXPECT_EQ(normalize_newlines("a\nb\r\n").second, NewlineStyle::Mixed);
  EXPECT_EQ(normalize_newlines("a\rb").first, "a\nb");
  EXPECT_EQ(normalize_newlines("ab").second, NewlineStyle::None);
  auto d = detect_and_decode("x\r\ny\n");
  EXPECT_TRUE(d.mixed_newlines());
  EXPECT_EQ(d.text, "x\ny\n");
}

TEST(Encoding, Latin1ZurichFixture) {
  auto bytes = slurp(fixture("latin1_zurich.csv"));
  ASSERT_NE(bytes.find('\xFC'), std::string::npos);
  auto undeclared = detect_and_decode(bytes);
  auto declared = detect_and_decode(bytes, Encoding::Latin1);
  EXPECT_EQ(undeclared.source_encoding, Encoding::Latin1);
  EXPECT_EQ(undeclared.text, "date,location,cases\n2016-05-15,Z\xC3\xBCrich,3\n");
  EXPECT_EQ(declared.text, undeclared.text);
}

TEST(Encoding, InvalidFixtureDeclaredUtf8) {
  auto bytes = slurp(fixture("invalid_utf8.csv"));
  EXPECT_EQ(code_of([&] { detect_and_decode(bytes, Encoding::Utf8); }), ErrorCode::DeclaredEncodingMismatch);
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace epinorm {

/// A case count or the explicit absence of one. UNKNOWN is a value in its own
/// right: it compares equal only to UNKNOWN and never to 0.
class CaseValue {
 public:
  constexpr CaseValue() = default;  // unknown
  static constexpr CaseValue unknown() { return CaseValue{}; }
  static constexpr CaseValue count(std::uint64_t n) {
    CaseValue v;
    v.count_ = n;
    return v;
  }

  constexpr bool is_unknown() const noexcept { return !count_.has_value(); }
  constexpr bool is_known() const noexcept { return count_.has_value(); }
  /// Precondition: is_known().
  constexpr std::uint64_t value() const { return *count_; }

  std::string to_string() const { return count_ ? std::to_string(*count_) : std::string("unknown"); }

  constexpr bool operator==(const CaseValue&) const = default;

 private:
  std::optional<std::uint64_t> count_;
};

/// Sum that propagates UNKNOWN: any unknown term makes the total unknown.
inline CaseValue sum(std::span<const CaseValue> values) {
  std::uint64_t total = 0;
  for (const auto& v : values) {
    if (v.is_unknown()) return CaseValue::unknown();
    total += v.value();
  }
  return CaseValue::count(total);
}

}  // namespace epinorm

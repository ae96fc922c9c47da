#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bosonic {

/// Ordered M-bit string, bit k belongs to mode k.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> bits);
  /// Parses "0110"; throws DomainError on other characters.
  static BitString from_string(std::string_view text);
  /// Bit k taken from bit k of code.
  static BitString from_code(std::uint64_t code, std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::size_t ones() const noexcept;
  /// Inverse of from_code; requires size() <= 64.
  std::uint64_t code() const;
  std::string to_string() const;

  auto operator<=>(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace bosonic

#include "bosonic/bitstring.hpp"

#include "bosonic/errors.hpp"

namespace bosonic {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("bit values must be 0 or 1");
  }
}

BitString BitString::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw DomainError("invalid bit string \"" + std::string(text) + "\"");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return BitString(std::move(bits));
}

BitString BitString::from_code(std::uint64_t code, std::size_t length) {
  if (length > 64) throw DomainError("bit code length exceeds 64");
  std::vector<std::uint8_t> bits(length);
  for (std::size_t k = 0; k < length; ++k) bits[k] = static_cast<std::uint8_t>((code >> k) & 1u);
  return BitString(std::move(bits));
}

std::size_t BitString::ones() const noexcept {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

std::uint64_t BitString::code() const {
  if (bits_.size() > 64) throw DomainError("bit string longer than 64 has no code");
  std::uint64_t c = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) c |= static_cast<std::uint64_t>(bits_[k]) << k;
  return c;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

}  // namespace bosonic

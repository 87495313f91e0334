#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coremark/image.hpp"

namespace coremark {

// Secret for the keyed scramble. Only its length is ever reported.
class Key {
 public:
  static constexpr std::size_t kMinBytes = 16;
  static constexpr std::size_t kMaxBytes = 64;

  // Throws KeyTooShort below 16 bytes and InvalidParams above 64.
  explicit Key(std::vector<std::uint8_t> bytes);
  // Hex text, surrounding whitespace ignored.
  static Key from_hex(std::string_view hex);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Keystream bits: block i is BLAKE2b-512 keyed with `key` over
// le64(nonce) || le64(i); bits are taken MSB first from each byte.
Bits keystream(const Key& key, std::uint64_t nonce, std::size_t n_bits);

// XOR with the keystream; applying it twice restores the input.
Bits scramble(const Bits& bits, const Key& key, std::uint64_t nonce);

inline constexpr std::size_t kMaxFramedBits = 65535;
inline constexpr std::size_t kFrameOverhead = 24;  // prefix + check

// CRC-8, polynomial 0x07, init 0, no reflection, over a bit sequence.
std::uint8_t crc8(const Bits& bits);

// 16-bit big-endian bit count, the body, then crc8 of the first two parts.
Bits frame(const Bits& bits);
// Throws ChecksumFailed on a bad check or a prefix that disagrees with the
// stream length.
Bits unframe(const Bits& framed);

// "0x..." hex (4 bits per digit, MSB first) or a string of '0'/'1'.
Bits parse_message(std::string_view text);
std::string to_bit_string(const Bits& bits);

}  // namespace coremark

#include "coremark/payload.hpp"

#include <sodium.h>

#include <array>
#include <cctype>

#include "coremark/error.hpp"

namespace coremark {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

void put_le64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

}  // namespace

Key::Key(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (bytes_.size() < kMinBytes) {
    throw Error(ErrorCode::KeyTooShort,
                "key has " + std::to_string(bytes_.size()) +
                    " bytes, at least 16 required");
  }
  if (bytes_.size() > kMaxBytes) {
    throw Error(ErrorCode::InvalidParams, "key longer than 64 bytes");
  }
}

Key Key::from_hex(std::string_view hex) {
  hex = trim(hex);
  if (hex.size() % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "odd number of hex digits in key");
  }
  std::vector<std::uint8_t> bytes;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::InvalidArgument, "key is not hex");
    }
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return Key(std::move(bytes));
}

Bits keystream(const Key& key, std::uint64_t nonce, std::size_t n_bits) {
  if (sodium_init() < 0) {
    throw Error(ErrorCode::InvalidArgument, "libsodium failed to initialise");
  }
  Bits out;
  out.reserve(n_bits);
  std::array<std::uint8_t, 16> msg{};
  std::array<std::uint8_t, crypto_generichash_BYTES_MAX> block{};
  put_le64(msg.data(), nonce);
  for (std::uint64_t counter = 0; out.size() < n_bits; ++counter) {
    put_le64(msg.data() + 8, counter);
    crypto_generichash(block.data(), block.size(), msg.data(), msg.size(),
                       key.bytes().data(), key.bytes().size());
    for (std::uint8_t byte : block) {
      for (int b = 7; b >= 0 && out.size() < n_bits; --b) {
        out.push_back((byte >> b) & 1);
      }
    }
  }
  return out;
}

Bits scramble(const Bits& bits, const Key& key, std::uint64_t nonce) {
  if (bits.empty()) {
    throw Error(ErrorCode::InvalidParams, "nothing to scramble");
  }
  Bits ks = keystream(key, nonce, bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) ks[i] ^= bits[i];
  return ks;
}

std::uint8_t crc8(const Bits& bits) {
  std::uint8_t crc = 0;
  for (std::uint8_t b : bits) {
    const bool top = ((crc >> 7) & 1) != (b & 1);
    crc = static_cast<std::uint8_t>(crc << 1);
    if (top) crc ^= 0x07;
  }
  return crc;
}

Bits frame(const Bits& bits) {
  if (bits.size() > kMaxFramedBits) {
    throw Error(ErrorCode::PayloadTooLong,
                std::to_string(bits.size()) + " bits exceed the 16-bit prefix");
  }
  Bits out;
  out.reserve(bits.size() + kFrameOverhead);
  for (int b = 15; b >= 0; --b) out.push_back((bits.size() >> b) & 1);
  out.insert(out.end(), bits.begin(), bits.end());
  const std::uint8_t c = crc8(out);
  for (int b = 7; b >= 0; --b) out.push_back((c >> b) & 1);
  return out;
}

Bits unframe(const Bits& framed) {
  if (framed.size() < kFrameOverhead) {
    throw Error(ErrorCode::ChecksumFailed, "frame shorter than its overhead");
  }
  std::size_t len = 0;
  for (std::size_t i = 0; i < 16; ++i) len = (len << 1) | framed[i];
  if (len + kFrameOverhead != framed.size()) {
    throw Error(ErrorCode::ChecksumFailed,
                "length prefix " + std::to_string(len) +
                    " disagrees with the frame size");
  }
  const Bits head(framed.begin(), framed.end() - 8);
  std::uint8_t check = 0;
  for (std::size_t i = framed.size() - 8; i < framed.size(); ++i) {
    check = static_cast<std::uint8_t>((check << 1) | framed[i]);
  }
  if (crc8(head) != check) {
    throw Error(ErrorCode::ChecksumFailed, "CRC-8 mismatch");
  }
  return Bits(head.begin() + 16, head.end());
}

Bits parse_message(std::string_view text) {
  text = trim(text);
  Bits out;
  if (text.starts_with("0x") || text.starts_with("0X")) {
    text.remove_prefix(2);
    for (char c : text) {
      const int v = hex_value(c);
      if (v < 0) throw Error(ErrorCode::InvalidArgument, "bad hex digit in message");
      for (int b = 3; b >= 0; --b) out.push_back((v >> b) & 1);
    }
  } else {
    for (char c : text) {
      if (c != '0' && c != '1') {
        throw Error(ErrorCode::InvalidArgument,
                    "message must be 0x-prefixed hex or a 0/1 string");
      }
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty message");
  return out;
}

std::string to_bit_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (std::uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace coremark

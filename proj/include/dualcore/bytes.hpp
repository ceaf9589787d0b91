// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// Fixed-width blocks and hex helpers shared by every layer of the core model.
//
// Byte order is most-significant-first throughout: byte 0 of a Block128 is
// bits 127..120 of the D[127:0]/Q[127:0] buses, byte 0 of a Block64 is bits
// 63..56 of the 3DES data bus.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dualcore {

using Bytes = std::vector<std::uint8_t>;
using Block128 = std::array<std::uint8_t, 16>;
using Block64 = std::array<std::uint8_t, 8>;
using Word256 = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kBlockBytes = 16;
inline constexpr std::size_t kTdesBlockBytes = 8;

enum class Direction : std::uint8_t { kEncrypt, kDecrypt };

// Raised for malformed configuration: bad widths, bad hex, unknown codes.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when the data itself violates a mode constraint (alignment, unit size).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <std::size_t N>
constexpr std::array<std::uint8_t, N> xor_blocks(const std::array<std::uint8_t, N>& a,
                                                 const std::array<std::uint8_t, N>& b) {
  std::array<std::uint8_t, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] ^ b[i];
  return out;
}

template <std::size_t N>
constexpr void xor_into(std::array<std::uint8_t, N>& dst, const std::array<std::uint8_t, N>& src) {
  for (std::size_t i = 0; i < N; ++i) dst[i] ^= src[i];
}

// Copies up to 16 octets starting at `offset`; missing octets are zero.
inline Block128 load_block(std::span<const std::uint8_t> data, std::size_t offset = 0) {
  Block128 b{};
  if (offset < data.size()) {
    const std::size_t n = std::min<std::size_t>(kBlockBytes, data.size() - offset);
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(offset), n, b.begin());
  }
  return b;
}

inline Block64 load_block64(std::span<const std::uint8_t> data, std::size_t offset = 0) {
  Block64 b{};
  if (offset < data.size()) {
    const std::size_t n = std::min<std::size_t>(kTdesBlockBytes, data.size() - offset);
    std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(offset), n, b.begin());
  }
  return b;
}

// Keeps the leading `len` octets and zeroes the rest.
inline Block128 mask_block(Block128 b, std::size_t len) {
  for (std::size_t i = len; i < kBlockBytes; ++i) b[i] = 0;
  return b;
}

constexpr std::uint64_t load_be64(const Block64& b) {
  std::uint64_t v = 0;
  for (auto byte : b) v = (v << 8) | byte;
  return v;
}

constexpr Block64 store_be64(std::uint64_t v) {
  Block64 b{};
  for (int i = 7; i >= 0; --i) {
    b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
  return b;
}

inline int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Case-insensitive; rejects odd lengths and non-hex characters.
inline Bytes parse_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ConfigError("hex string has odd length: " + std::string(hex));
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_digit(hex[i]);
    const int lo = hex_digit(hex[i + 1]);
    if (hi < 0 || lo < 0) throw ConfigError("invalid hex string: " + std::string(hex));
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> parse_hex_exact(std::string_view hex) {
  const Bytes raw = parse_hex(hex);
  if (raw.size() != N) {
    throw ConfigError("expected " + std::to_string(N * 8) + "-bit hex value, got " +
                      std::to_string(raw.size() * 8) + " bits");
  }
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

inline std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(data.size() * 2);
  for (auto b : data) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

}  // namespace dualcore

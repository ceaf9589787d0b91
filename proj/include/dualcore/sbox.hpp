// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// GF(2^8) arithmetic and the AES substitution tables, generated at compile
// time from the field inverse and the affine map.

#pragma once

#include <array>
#include <cstdint>

namespace dualcore {

// Multiplication modulo x^8 + x^4 + x^3 + x + 1.
constexpr std::uint8_t gf256_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t acc = 0;
  while (b != 0) {
    if (b & 1) acc ^= a;
    const bool carry = (a & 0x80) != 0;
    a = static_cast<std::uint8_t>(a << 1);
    if (carry) a ^= 0x1b;
    b >>= 1;
  }
  return acc;
}

constexpr std::uint8_t xtime(std::uint8_t a) { return gf256_mul(a, 2); }

// a^254 = a^-1 for a != 0; maps 0 to 0.
constexpr std::uint8_t gf256_inverse(std::uint8_t a) {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  unsigned exp = 254;
  while (exp != 0) {
    if (exp & 1) result = gf256_mul(result, base);
    base = gf256_mul(base, base);
    exp >>= 1;
  }
  return a == 0 ? 0 : result;
}

constexpr std::uint8_t rotl8(std::uint8_t v, int n) {
  return static_cast<std::uint8_t>((v << n) | (v >> (8 - n)));
}

constexpr std::uint8_t sbox_affine(std::uint8_t b) {
  return static_cast<std::uint8_t>(b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
}

struct SBoxTables {
  std::array<std::uint8_t, 256> forward{};
  std::array<std::uint8_t, 256> inverse{};
};

constexpr SBoxTables make_sbox_tables() {
  SBoxTables t;
  for (unsigned i = 0; i < 256; ++i) {
    const auto s = sbox_affine(gf256_inverse(static_cast<std::uint8_t>(i)));
    t.forward[i] = s;
    t.inverse[s] = static_cast<std::uint8_t>(i);
  }
  return t;
}

inline constexpr SBoxTables kStandardSBox = make_sbox_tables();

inline const SBoxTables& standard_sbox() { return kStandardSBox; }

// Round constant for key-expansion step i (i >= 1): x^(i-1) in GF(2^8).
constexpr std::uint8_t round_constant(unsigned i) {
  std::uint8_t rc = 1;
  for (unsigned k = 1; k < i; ++k) rc = xtime(rc);
  return rc;
}

}  // namespace dualcore

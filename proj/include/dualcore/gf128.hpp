// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// GF(2^128) arithmetic with the field polynomial x^128 + x^7 + x^2 + x + 1.
//
// Two bit conventions are in use:
//   kGcm: bit 0 of the polynomial is the MSB of octet 0 (GHASH).
//   kXts: the block is a little-endian integer, bit 0 is the LSB of octet 0
//         (tweak multiplication by alpha).

#pragma once

#include <cstdint>
#include <span>

#include "dualcore/bytes.hpp"

namespace dualcore {

enum class Gf128Convention : std::uint8_t { kGcm, kXts };

namespace gf128_detail {

struct U128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
};

inline U128 load(const Block128& b) {
  U128 v;
  for (int i = 0; i < 8; ++i) {
    v.hi = (v.hi << 8) | b[static_cast<std::size_t>(i)];
    v.lo = (v.lo << 8) | b[static_cast<std::size_t>(i + 8)];
  }
  return v;
}

inline Block128 store(U128 v) {
  Block128 b{};
  for (int i = 7; i >= 0; --i) {
    b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v.hi);
    b[static_cast<std::size_t>(i + 8)] = static_cast<std::uint8_t>(v.lo);
    v.hi >>= 8;
    v.lo >>= 8;
  }
  return b;
}

inline Block128 mul_gcm(const Block128& x, const Block128& y) {
  const U128 xv = load(x);
  U128 z;
  U128 v = load(y);
  for (int i = 0; i < 128; ++i) {
    const std::uint64_t word = i < 64 ? xv.hi : xv.lo;
    if ((word >> (63 - (i % 64))) & 1) {
      z.hi ^= v.hi;
      z.lo ^= v.lo;
    }
    const bool lsb = (v.lo & 1) != 0;
    v.lo = (v.lo >> 1) | (v.hi << 63);
    v.hi >>= 1;
    if (lsb) v.hi ^= 0xe100000000000000ULL;
  }
  return store(z);
}

}  // namespace gf128_detail

// Multiplies the little-endian tweak by alpha (x).
inline Block128 xts_mul_alpha(const Block128& t) {
  Block128 out{};
  std::uint8_t carry = 0;
  for (std::size_t i = 0; i < kBlockBytes; ++i) {
    out[i] = static_cast<std::uint8_t>((t[i] << 1) | carry);
    carry = static_cast<std::uint8_t>(t[i] >> 7);
  }
  if (carry) out[0] ^= 0x87;
  return out;
}

inline Block128 gf128_mul(const Block128& a, const Block128& b, Gf128Convention conv = Gf128Convention::kGcm) {
  if (conv == Gf128Convention::kGcm) return gf128_detail::mul_gcm(a, b);
  Block128 acc{};
  Block128 shifted = a;
  for (std::size_t bit = 0; bit < 128; ++bit) {
    if ((b[bit / 8] >> (bit % 8)) & 1) xor_into(acc, shifted);
    shifted = xts_mul_alpha(shifted);
  }
  return acc;
}

// Multiplicative identity in each convention.
inline Block128 gf128_one(Gf128Convention conv) {
  Block128 one{};
  if (conv == Gf128Convention::kGcm) {
    one[0] = 0x80;
  } else {
    one[0] = 0x01;
  }
  return one;
}

// Polynomial hash over zero-padded 128-bit blocks.
class Ghash {
 public:
  explicit Ghash(const Block128& h) : h_(h) {}

  void update_block(const Block128& x) {
    xor_into(y_, x);
    y_ = gf128_detail::mul_gcm(y_, h_);
  }

  void update(std::span<const std::uint8_t> data) {
    for (std::size_t off = 0; off < data.size(); off += kBlockBytes) update_block(load_block(data, off));
  }

  const Block128& digest() const { return y_; }

 private:
  Block128 h_;
  Block128 y_{};
};

inline Block128 ghash(const Block128& h, std::span<const std::uint8_t> data) {
  Ghash g(h);
  g.update(data);
  return g.digest();
}

}  // namespace dualcore

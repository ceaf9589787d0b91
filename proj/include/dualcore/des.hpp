// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// DES and three-key 3DES (E-D-E), plus odd-parity key checking.

#pragma once

#include <array>
#include <bit>
#include <cstdint>

#include "dualcore/bytes.hpp"

namespace dualcore {

struct DesKey64 {
  Block64 bytes{};

  static DesKey64 from_hex(std::string_view hex) { return {parse_hex_exact<8>(hex)}; }
  friend bool operator==(const DesKey64&, const DesKey64&) = default;
};

// Odd parity in every octet; the parity bit is the octet's LSB.
constexpr bool check_key_parity(const DesKey64& key) {
  for (auto b : key.bytes) {
    if (std::popcount(b) % 2 == 0) return false;
  }
  return true;
}

// Same key with each octet's LSB set for odd parity.
constexpr DesKey64 with_odd_parity(DesKey64 key) {
  for (auto& b : key.bytes) {
    const auto high = static_cast<std::uint8_t>(b & 0xfe);
    b = static_cast<std::uint8_t>(high | (std::popcount(high) % 2 == 0 ? 1 : 0));
  }
  return key;
}

// Write_error[2:0]: bit i set when key i+1 fails the parity check.
constexpr std::uint8_t tdes_parity_errors(const DesKey64& k1, const DesKey64& k2, const DesKey64& k3) {
  return static_cast<std::uint8_t>((check_key_parity(k1) ? 0 : 1) | (check_key_parity(k2) ? 0 : 2) |
                                   (check_key_parity(k3) ? 0 : 4));
}

namespace des_detail {

// Permutation tables list 1-based source bit positions counted from the MSB.
inline constexpr std::array<std::uint8_t, 64> kInitialPerm{
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4, 62, 54, 46, 38, 30, 22,
    14, 6,  64, 56, 48, 40, 32, 24, 16, 8, 57, 49, 41, 33, 25, 17, 9,  1,  59, 51, 43, 35,
    27, 19, 11, 3,  61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7};

inline constexpr std::array<std::uint8_t, 64> kFinalPerm{
    40, 8,  48, 16, 56, 24, 64, 32, 39, 7,  47, 15, 55, 23, 63, 31, 38, 6,  46, 14, 54, 22,
    62, 30, 37, 5,  45, 13, 53, 21, 61, 29, 36, 4,  44, 12, 52, 20, 60, 28, 35, 3,  43, 11,
    51, 19, 59, 27, 34, 2,  42, 10, 50, 18, 58, 26, 33, 1,  41, 9,  49, 17, 57, 25};

inline constexpr std::array<std::uint8_t, 48> kExpansion{
    32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,  8,  9,  10, 11, 12, 13, 12, 13, 14, 15, 16, 17,
    16, 17, 18, 19, 20, 21, 20, 21, 22, 23, 24, 25, 24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1};

inline constexpr std::array<std::uint8_t, 32> kPBox{16, 7, 20, 21, 29, 12, 28, 17, 1,  15, 23,
                                                     26, 5, 18, 31, 10, 2,  8,  24, 14, 32, 27,
                                                     3,  9, 19, 13, 30, 6,  22, 11, 4,  25};

inline constexpr std::array<std::uint8_t, 56> kPc1{57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
                                                    10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
                                                    63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
                                                    14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4};

inline constexpr std::array<std::uint8_t, 48> kPc2{14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10,
                                                    23, 19, 12, 4,  26, 8,  16, 7,  27, 20, 13, 2,
                                                    41, 52, 31, 37, 47, 55, 30, 40, 51, 45, 33, 48,
                                                    44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32};

inline constexpr std::array<std::uint8_t, 16> kShifts{1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 1};

inline constexpr std::uint8_t kSBoxes[8][4][16] = {
    {{14, 4, 13, 1, 2, 15, 11, 8, 3, 10, 6, 12, 5, 9, 0, 7},
     {0, 15, 7, 4, 14, 2, 13, 1, 10, 6, 12, 11, 9, 5, 3, 8},
     {4, 1, 14, 8, 13, 6, 2, 11, 15, 12, 9, 7, 3, 10, 5, 0},
     {15, 12, 8, 2, 4, 9, 1, 7, 5, 11, 3, 14, 10, 0, 6, 13}},
    {{15, 1, 8, 14, 6, 11, 3, 4, 9, 7, 2, 13, 12, 0, 5, 10},
     {3, 13, 4, 7, 15, 2, 8, 14, 12, 0, 1, 10, 6, 9, 11, 5},
     {0, 14, 7, 11, 10, 4, 13, 1, 5, 8, 12, 6, 9, 3, 2, 15},
     {13, 8, 10, 1, 3, 15, 4, 2, 11, 6, 7, 12, 0, 5, 14, 9}},
    {{10, 0, 9, 14, 6, 3, 15, 5, 1, 13, 12, 7, 11, 4, 2, 8},
     {13, 7, 0, 9, 3, 4, 6, 10, 2, 8, 5, 14, 12, 11, 15, 1},
     {13, 6, 4, 9, 8, 15, 3, 0, 11, 1, 2, 12, 5, 10, 14, 7},
     {1, 10, 13, 0, 6, 9, 8, 7, 4, 15, 14, 3, 11, 5, 2, 12}},
    {{7, 13, 14, 3, 0, 6, 9, 10, 1, 2, 8, 5, 11, 12, 4, 15},
     {13, 8, 11, 5, 6, 15, 0, 3, 4, 7, 2, 12, 1, 10, 14, 9},
     {10, 6, 9, 0, 12, 11, 7, 13, 15, 1, 3, 14, 5, 2, 8, 4},
     {3, 15, 0, 6, 10, 1, 13, 8, 9, 4, 5, 11, 12, 7, 2, 14}},
    {{2, 12, 4, 1, 7, 10, 11, 6, 8, 5, 3, 15, 13, 0, 14, 9},
     {14, 11, 2, 12, 4, 7, 13, 1, 5, 0, 15, 10, 3, 9, 8, 6},
     {4, 2, 1, 11, 10, 13, 7, 8, 15, 9, 12, 5, 6, 3, 0, 14},
     {11, 8, 12, 7, 1, 14, 2, 13, 6, 15, 0, 9, 10, 4, 5, 3}},
    {{12, 1, 10, 15, 9, 2, 6, 8, 0, 13, 3, 4, 14, 7, 5, 11},
     {10, 15, 4, 2, 7, 12, 9, 5, 6, 1, 13, 14, 0, 11, 3, 8},
     {9, 14, 15, 5, 2, 8, 12, 3, 7, 0, 4, 10, 1, 13, 11, 6},
     {4, 3, 2, 12, 9, 5, 15, 10, 11, 14, 1, 7, 6, 0, 8, 13}},
    {{4, 11, 2, 14, 15, 0, 8, 13, 3, 12, 9, 7, 5, 10, 6, 1},
     {13, 0, 11, 7, 4, 9, 1, 10, 14, 3, 5, 12, 2, 15, 8, 6},
     {1, 4, 11, 13, 12, 3, 7, 14, 10, 15, 6, 8, 0, 5, 9, 2},
     {6, 11, 13, 8, 1, 4, 10, 7, 9, 5, 0, 15, 14, 2, 3, 12}},
    {{13, 2, 8, 4, 6, 15, 11, 1, 10, 9, 3, 14, 5, 0, 12, 7},
     {1, 15, 13, 8, 10, 3, 7, 4, 12, 5, 6, 11, 0, 14, 9, 2},
     {7, 11, 4, 1, 9, 12, 14, 2, 0, 6, 10, 13, 15, 3, 5, 8},
     {2, 1, 14, 7, 4, 10, 8, 13, 15, 12, 9, 0, 3, 5, 6, 11}}};

template <std::size_t N>
constexpr std::uint64_t permute(std::uint64_t in, int in_bits, const std::array<std::uint8_t, N>& table) {
  std::uint64_t out = 0;
  for (auto pos : table) out = (out << 1) | ((in >> (in_bits - pos)) & 1);
  return out;
}

constexpr std::uint32_t rotl28(std::uint32_t v, int n) { return ((v << n) | (v >> (28 - n))) & 0x0fffffff; }

constexpr std::uint32_t feistel(std::uint32_t half, std::uint64_t subkey) {
  const std::uint64_t x = permute(half, 32, kExpansion) ^ subkey;
  std::uint32_t s_out = 0;
  for (int box = 0; box < 8; ++box) {
    const auto six = static_cast<unsigned>((x >> (42 - 6 * box)) & 0x3f);
    const unsigned row = ((six >> 4) & 2) | (six & 1);
    const unsigned col = (six >> 1) & 0xf;
    s_out = (s_out << 4) | kSBoxes[box][row][col];
  }
  return static_cast<std::uint32_t>(permute(s_out, 32, kPBox));
}

}  // namespace des_detail

// Single DES with the 16 subkeys expanded once.
class Des {
 public:
  explicit constexpr Des(const DesKey64& key) {
    const std::uint64_t cd = des_detail::permute(load_be64(key.bytes), 64, des_detail::kPc1);
    auto c = static_cast<std::uint32_t>(cd >> 28);
    auto d = static_cast<std::uint32_t>(cd & 0x0fffffff);
    for (std::size_t i = 0; i < 16; ++i) {
      c = des_detail::rotl28(c, des_detail::kShifts[i]);
      d = des_detail::rotl28(d, des_detail::kShifts[i]);
      subkeys_[i] = des_detail::permute((std::uint64_t{c} << 28) | d, 56, des_detail::kPc2);
    }
  }

  constexpr Block64 process(const Block64& block, Direction dir) const {
    const std::uint64_t ip = des_detail::permute(load_be64(block), 64, des_detail::kInitialPerm);
    auto left = static_cast<std::uint32_t>(ip >> 32);
    auto right = static_cast<std::uint32_t>(ip);
    for (std::size_t i = 0; i < 16; ++i) {
      const std::size_t k = dir == Direction::kEncrypt ? i : 15 - i;
      const std::uint32_t next = left ^ des_detail::feistel(right, subkeys_[k]);
      left = right;
      right = next;
    }
    // The halves are swapped after the last round.
    const std::uint64_t preoutput = (std::uint64_t{right} << 32) | left;
    return store_be64(des_detail::permute(preoutput, 64, des_detail::kFinalPerm));
  }

 private:
  std::array<std::uint64_t, 16> subkeys_{};
};

inline Block64 des_block(const Block64& block, const DesKey64& key, Direction dir) {
  return Des(key).process(block, dir);
}

// C = E_k3(D_k2(E_k1(P)))
class TripleDes {
 public:
  TripleDes(const DesKey64& k1, const DesKey64& k2, const DesKey64& k3) : d1_(k1), d2_(k2), d3_(k3) {}

  Block64 encrypt(const Block64& p) const {
    return d3_.process(d2_.process(d1_.process(p, Direction::kEncrypt), Direction::kDecrypt), Direction::kEncrypt);
  }
  // P = D_k1(E_k2(D_k3(C)))
  Block64 decrypt(const Block64& c) const {
    return d1_.process(d2_.process(d3_.process(c, Direction::kDecrypt), Direction::kEncrypt), Direction::kDecrypt);
  }
  Block64 process(const Block64& b, Direction dir) const {
    return dir == Direction::kEncrypt ? encrypt(b) : decrypt(b);
  }

 private:
  Des d1_, d2_, d3_;
};

inline Block64 tdes_encrypt(const Block64& block, const DesKey64& k1, const DesKey64& k2, const DesKey64& k3) {
  return TripleDes(k1, k2, k3).encrypt(block);
}

inline Block64 tdes_decrypt(const Block64& block, const DesKey64& k1, const DesKey64& k2, const DesKey64& k3) {
  return TripleDes(k1, k2, k3).decrypt(block);
}

// Timing of the 3DES datapath: 48 Feistel rounds at one round per clock, fully
// pipelined, accepting a new 64-bit block every 8 clocks on a single channel.
struct TdesPipelineTiming {
  static constexpr int kLatency = 48;
  static constexpr int kIssueInterval = 8;

  // Cycle of the last result for `n` back-to-back blocks, counted from the
  // first issue.
  static constexpr std::uint64_t stream_cycles(std::uint64_t n) {
    return n == 0 ? 0 : kLatency + kIssueInterval * (n - 1);
  }
};

}  // namespace dualcore

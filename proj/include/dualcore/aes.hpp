// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// AES round transformations and whole-block encryption/decryption.
//
// The round helpers are exposed individually because the dual-engine model
// advances each lane by exactly one round per clock.

#pragma once

#include <array>
#include <cstdint>

#include "dualcore/bytes.hpp"
#include "dualcore/key_schedule.hpp"
#include "dualcore/sbox.hpp"

namespace dualcore {

// 4x4 state, column-major: octet i of the block is row i % 4, column i / 4.
struct AesState {
  std::array<std::uint8_t, 16> grid{};

  static constexpr AesState from_block(const Block128& b) { return AesState{b}; }
  constexpr Block128 to_block() const { return grid; }

  constexpr std::uint8_t& at(int row, int col) { return grid[static_cast<std::size_t>(row + 4 * col)]; }
  constexpr std::uint8_t at(int row, int col) const { return grid[static_cast<std::size_t>(row + 4 * col)]; }

  friend bool operator==(const AesState&, const AesState&) = default;
};

inline AesState sub_bytes(AesState s, bool inverse, const SBoxTables& t = standard_sbox()) {
  const auto& table = inverse ? t.inverse : t.forward;
  for (auto& b : s.grid) b = table[b];
  return s;
}

// Row r rotates left by r positions (right when inverse).
constexpr AesState shift_rows(const AesState& s, bool inverse) {
  AesState out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int src = inverse ? (c - r + 4) % 4 : (c + r) % 4;
      out.at(r, c) = s.at(r, src);
    }
  }
  return out;
}

constexpr std::array<std::uint8_t, 4> mix_column(const std::array<std::uint8_t, 4>& col, bool inverse) {
  // Circulant rows: (02 03 01 01) forward, (0e 0b 0d 09) inverse.
  constexpr std::array<std::uint8_t, 4> kForward{2, 3, 1, 1};
  constexpr std::array<std::uint8_t, 4> kInverse{0x0e, 0x0b, 0x0d, 0x09};
  const auto& m = inverse ? kInverse : kForward;
  std::array<std::uint8_t, 4> out{};
  for (std::size_t r = 0; r < 4; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t k = 0; k < 4; ++k) acc ^= gf256_mul(m[(k + 4 - r) % 4], col[k]);
    out[r] = acc;
  }
  return out;
}

constexpr AesState mix_columns(const AesState& s, bool inverse) {
  AesState out;
  for (int c = 0; c < 4; ++c) {
    const auto mixed = mix_column({s.at(0, c), s.at(1, c), s.at(2, c), s.at(3, c)}, inverse);
    for (int r = 0; r < 4; ++r) out.at(r, c) = mixed[static_cast<std::size_t>(r)];
  }
  return out;
}

constexpr AesState add_round_key(AesState s, const RoundKey& rk) {
  xor_into(s.grid, rk.bytes);
  return s;
}

// Encryption round `round` (1..Nr); the final round skips MixColumns.
inline AesState aes_encrypt_round(const AesState& s, const KeySchedule& ks, int round,
                                  const SBoxTables& t = standard_sbox()) {
  AesState x = shift_rows(sub_bytes(s, false, t), false);
  if (round < ks.rounds()) x = mix_columns(x, false);
  return add_round_key(x, ks[round]);
}

// Decryption round `round` (1..Nr), inverse-cipher order: InvShiftRows,
// InvSubBytes, AddRoundKey, then InvMixColumns except in the final round.
inline AesState aes_decrypt_round(const AesState& s, const KeySchedule& ks, int round,
                                  const SBoxTables& t = standard_sbox()) {
  AesState x = sub_bytes(shift_rows(s, true), true, t);
  x = add_round_key(x, ks[ks.rounds() - round]);
  if (round < ks.rounds()) x = mix_columns(x, true);
  return x;
}

inline AesState aes_encrypt_initial(const Block128& b, const KeySchedule& ks) {
  return add_round_key(AesState::from_block(b), ks[0]);
}

inline AesState aes_decrypt_initial(const Block128& b, const KeySchedule& ks) {
  return add_round_key(AesState::from_block(b), ks[ks.rounds()]);
}

inline Block128 aes_encrypt_block(const Block128& block, const KeySchedule& ks,
                                  const SBoxTables& t = standard_sbox()) {
  AesState s = aes_encrypt_initial(block, ks);
  for (int r = 1; r <= ks.rounds(); ++r) s = aes_encrypt_round(s, ks, r, t);
  return s.to_block();
}

inline Block128 aes_decrypt_block(const Block128& block, const KeySchedule& ks,
                                  const SBoxTables& t = standard_sbox()) {
  AesState s = aes_decrypt_initial(block, ks);
  for (int r = 1; r <= ks.rounds(); ++r) s = aes_decrypt_round(s, ks, r, t);
  return s.to_block();
}

// Key plus expanded schedule, bound to one set of substitution tables.
class Aes {
 public:
  explicit Aes(const AesKey& key, const SBoxTables& tables = standard_sbox())
      : tables_(&tables), schedule_(expand_key(key, tables)) {}
  Aes(KeySchedule schedule, const SBoxTables& tables) : tables_(&tables), schedule_(std::move(schedule)) {}

  Block128 encrypt(const Block128& b) const { return aes_encrypt_block(b, schedule_, *tables_); }
  Block128 decrypt(const Block128& b) const { return aes_decrypt_block(b, schedule_, *tables_); }
  Block128 process(const Block128& b, Direction dir) const {
    return dir == Direction::kEncrypt ? encrypt(b) : decrypt(b);
  }

  const KeySchedule& schedule() const { return schedule_; }
  const SBoxTables& tables() const { return *tables_; }

 private:
  const SBoxTables* tables_;
  KeySchedule schedule_;
};

}  // namespace dualcore

// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// The five AES modes of the core (GCM, CBC, CTR, ECB, XTS) as pure functions,
// plus the ECB 3DES datapath.
//
// Last-block metadata mirrors the port fields: `be` is the byte length of the
// final block minus one, `endc` marks the final GCM/CTR block, `cts` marks the
// last full XTS block when a partial block follows.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dualcore/aes.hpp"
#include "dualcore/bytes.hpp"
#include "dualcore/des.hpp"
#include "dualcore/gf128.hpp"
#include "dualcore/key_schedule.hpp"

namespace dualcore {

// Mode[2:0] encodings.
enum class Mode : std::uint8_t { kGcm = 0, kCbc = 1, kCtr = 2, kEcb = 3, kXts = 4 };

inline std::optional<Mode> decode_mode(std::uint8_t code) {
  if (code > 4) return std::nullopt;
  return static_cast<Mode>(code);
}

constexpr std::uint8_t encode_mode(Mode m) { return static_cast<std::uint8_t>(m); }

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kGcm: return "gcm";
    case Mode::kCbc: return "cbc";
    case Mode::kCtr: return "ctr";
    case Mode::kEcb: return "ecb";
    case Mode::kXts: return "xts";
  }
  return "?";
}

inline std::optional<Mode> parse_mode_name(std::string_view name) {
  for (std::uint8_t c = 0; c <= 4; ++c) {
    if (mode_name(static_cast<Mode>(c)) == name) return static_cast<Mode>(c);
  }
  return std::nullopt;
}

// Modes that let both engines run; CBC keeps to one.
constexpr bool is_dual_lane(Mode m) { return m != Mode::kCbc; }

struct ModeConfig {
  Mode mode = Mode::kEcb;
  Direction direction = Direction::kEncrypt;
  AesKey key1;
  std::optional<AesKey> key2;  // XTS tweak key
  Block128 iv{};               // CBC IV, GCM/CTR initial counter, XTS tweak

  KeySize key_size() const { return key1.size(); }

  void validate() const {
    if (mode == Mode::kXts) {
      if (!key2) throw ConfigError("XTS mode requires a tweak key (K2)");
      if (key2->size() != key1.size()) throw ConfigError("XTS tweak key must match the K1 key size");
    } else if (key2) {
      throw ConfigError("K2 is only used in XTS mode");
    }
  }
};

struct LastBlockMeta {
  std::uint8_t be = 15;
  bool endc = false;
  bool cts = false;
  bool new_iv = false;

  std::size_t last_block_len() const { return static_cast<std::size_t>(be & 0x0f) + 1; }

  // Metadata that describes a data unit of `len` octets in mode `m`.
  static LastBlockMeta for_length(std::size_t len, Mode m) {
    LastBlockMeta meta;
    const std::size_t tail = len % kBlockBytes;
    meta.be = static_cast<std::uint8_t>(tail == 0 ? 15 : tail - 1);
    meta.endc = (m == Mode::kGcm || m == Mode::kCtr) && len > 0;
    meta.cts = m == Mode::kXts && tail != 0;
    return meta;
  }
};

struct GcmResult {
  Bytes data;
  Block128 tag{};
};

// 32-bit big-endian wrapping increment of the counter's low word.
constexpr Block128 inc32(Block128 ctr) {
  for (std::size_t i = 15; i >= 12; --i) {
    if (++ctr[i] != 0) break;
  }
  return ctr;
}

// J0 for a 96-bit nonce: nonce || 0x00000001.
inline Block128 gcm_j0_from_nonce(std::span<const std::uint8_t> nonce) {
  if (nonce.size() != 12) throw ConfigError("GCM nonce must be 96 bits");
  Block128 j0{};
  std::copy(nonce.begin(), nonce.end(), j0.begin());
  j0[15] = 1;
  return j0;
}

namespace mode_detail {

inline void require_mode(const ModeConfig& cfg, Mode m) {
  cfg.validate();
  if (cfg.mode != m) {
    throw ConfigError("configuration is for " + std::string(mode_name(cfg.mode)) + ", not " +
                      std::string(mode_name(m)));
  }
}

inline void check_counter_tail(std::size_t len, const LastBlockMeta& meta) {
  const std::size_t tail = len % kBlockBytes;
  if (len == 0) return;
  if (!meta.endc) {
    if (tail != 0) throw DataError("partial final block requires EndC with Be set");
    return;
  }
  const std::size_t expect = tail == 0 ? kBlockBytes : tail;
  if (meta.last_block_len() != expect) {
    throw DataError("Be=" + std::to_string(meta.be) + " disagrees with a final block of " + std::to_string(expect) +
                    " octets");
  }
}

inline void check_xts_tail(std::size_t len, const LastBlockMeta& meta) {
  if (len < kBlockBytes) throw DataError("XTS data unit shorter than one 128-bit block");
  const std::size_t tail = len % kBlockBytes;
  if (tail == 0) return;
  if (!meta.cts) throw DataError("XTS partial block requires Cts on the last full block");
  if (meta.last_block_len() != tail) {
    throw DataError("Be=" + std::to_string(meta.be) + " disagrees with a partial block of " + std::to_string(tail) +
                    " octets");
  }
}

inline Bytes ctr_xor(const Aes& aes, Block128 counter, std::span<const std::uint8_t> data) {
  Bytes out(data.begin(), data.end());
  for (std::size_t off = 0; off < data.size(); off += kBlockBytes) {
    const Block128 ks = aes.encrypt(counter);
    const std::size_t n = std::min(kBlockBytes, data.size() - off);
    for (std::size_t i = 0; i < n; ++i) out[off + i] ^= ks[i];
    counter = inc32(counter);
  }
  return out;
}

inline Block128 gcm_length_block(std::size_t aad_len, std::size_t data_len) {
  Block128 lb{};
  const std::uint64_t a = static_cast<std::uint64_t>(aad_len) * 8;
  const std::uint64_t c = static_cast<std::uint64_t>(data_len) * 8;
  for (int i = 0; i < 8; ++i) {
    lb[static_cast<std::size_t>(7 - i)] = static_cast<std::uint8_t>(a >> (8 * i));
    lb[static_cast<std::size_t>(15 - i)] = static_cast<std::uint8_t>(c >> (8 * i));
  }
  return lb;
}

}  // namespace mode_detail

inline std::vector<Block128> ecb_process(std::span<const Block128> blocks, const ModeConfig& cfg,
                                         const SBoxTables& tables = standard_sbox()) {
  mode_detail::require_mode(cfg, Mode::kEcb);
  const Aes aes(cfg.key1, tables);
  std::vector<Block128> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(aes.process(b, cfg.direction));
  return out;
}

inline std::vector<Block128> cbc_process(std::span<const Block128> blocks, const ModeConfig& cfg,
                                         const SBoxTables& tables = standard_sbox()) {
  mode_detail::require_mode(cfg, Mode::kCbc);
  const Aes aes(cfg.key1, tables);
  std::vector<Block128> out;
  out.reserve(blocks.size());
  Block128 chain = cfg.iv;
  for (const auto& b : blocks) {
    if (cfg.direction == Direction::kEncrypt) {
      chain = aes.encrypt(xor_blocks(b, chain));
      out.push_back(chain);
    } else {
      out.push_back(xor_blocks(aes.decrypt(b), chain));
      chain = b;
    }
  }
  return out;
}

// Encryption and decryption are the same operation.
inline Bytes ctr_process(std::span<const std::uint8_t> data, const ModeConfig& cfg, const LastBlockMeta& meta,
                         const SBoxTables& tables = standard_sbox()) {
  mode_detail::require_mode(cfg, Mode::kCtr);
  mode_detail::check_counter_tail(data.size(), meta);
  return mode_detail::ctr_xor(Aes(cfg.key1, tables), cfg.iv, data);
}

inline Bytes ctr_process(std::span<const std::uint8_t> data, const ModeConfig& cfg,
                         const SBoxTables& tables = standard_sbox()) {
  return ctr_process(data, cfg, LastBlockMeta::for_length(data.size(), Mode::kCtr), tables);
}

// cfg.iv is the initial counter block J0; data starts at inc32(J0). There is
// no AAD input, so the length block carries an AAD length of zero. The tag is
// computed over the ciphertext in both directions.
inline GcmResult gcm_process(std::span<const std::uint8_t> data, const ModeConfig& cfg, const LastBlockMeta& meta,
                             const SBoxTables& tables = standard_sbox()) {
  mode_detail::require_mode(cfg, Mode::kGcm);
  mode_detail::check_counter_tail(data.size(), meta);
  const Aes aes(cfg.key1, tables);
  GcmResult r;
  r.data = mode_detail::ctr_xor(aes, inc32(cfg.iv), data);
  const auto& ciphertext = cfg.direction == Direction::kEncrypt ? r.data : Bytes(data.begin(), data.end());
  Ghash g(aes.encrypt(Block128{}));
  g.update(ciphertext);
  g.update_block(mode_detail::gcm_length_block(0, ciphertext.size()));
  r.tag = xor_blocks(g.digest(), aes.encrypt(cfg.iv));
  return r;
}

inline GcmResult gcm_process(std::span<const std::uint8_t> data, const ModeConfig& cfg,
                             const SBoxTables& tables = standard_sbox()) {
  return gcm_process(data, cfg, LastBlockMeta::for_length(data.size(), Mode::kGcm), tables);
}

// Decrypts and checks `tag`; nothing is returned on mismatch.
inline std::optional<Bytes> gcm_decrypt_verified(std::span<const std::uint8_t> ciphertext, const Block128& tag,
                                                 ModeConfig cfg, const SBoxTables& tables = standard_sbox()) {
  cfg.direction = Direction::kDecrypt;
  GcmResult r = gcm_process(ciphertext, cfg, tables);
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < kBlockBytes; ++i) diff |= static_cast<std::uint8_t>(r.tag[i] ^ tag[i]);
  if (diff != 0) return std::nullopt;
  return std::move(r.data);
}

// One XTS block with tweak t: E_K1(p ^ t) ^ t.
inline Block128 xts_block(const Aes& aes, const Block128& b, const Block128& t, Direction dir) {
  return xor_blocks(aes.process(xor_blocks(b, t), dir), t);
}

// A single data unit; the tweak sequence starts at E_K2(iv).
inline Bytes xts_process(std::span<const std::uint8_t> data, const ModeConfig& cfg, const LastBlockMeta& meta,
                         const SBoxTables& tables = standard_sbox()) {
  mode_detail::require_mode(cfg, Mode::kXts);
  mode_detail::check_xts_tail(data.size(), meta);
  const Aes aes(cfg.key1, tables);
  const Aes tweak_cipher(*cfg.key2, tables);
  const Direction dir = cfg.direction;

  const std::size_t full = data.size() / kBlockBytes;
  const std::size_t tail = data.size() % kBlockBytes;
  const std::size_t plain_blocks = tail == 0 ? full : full - 1;

  Bytes out(data.size());
  Block128 t = tweak_cipher.encrypt(cfg.iv);
  for (std::size_t j = 0; j < plain_blocks; ++j) {
    const Block128 r = xts_block(aes, load_block(data, j * kBlockBytes), t, dir);
    std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(j * kBlockBytes));
    t = xts_mul_alpha(t);
  }
  if (tail == 0) return out;

  // Ciphertext stealing over the last full block (tweak t) and the tail (t*alpha).
  const std::size_t last_off = plain_blocks * kBlockBytes;
  const std::size_t tail_off = last_off + kBlockBytes;
  const Block128 t_next = xts_mul_alpha(t);
  const Block128 first_tweak = dir == Direction::kEncrypt ? t : t_next;
  const Block128 second_tweak = dir == Direction::kEncrypt ? t_next : t;

  const Block128 stolen = xts_block(aes, load_block(data, last_off), first_tweak, dir);
  Block128 merged = stolen;
  std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(tail_off), tail, merged.begin());
  const Block128 last_full = xts_block(aes, merged, second_tweak, dir);

  std::copy(last_full.begin(), last_full.end(), out.begin() + static_cast<std::ptrdiff_t>(last_off));
  std::copy_n(stolen.begin(), tail, out.begin() + static_cast<std::ptrdiff_t>(tail_off));
  return out;
}

inline Bytes xts_process(std::span<const std::uint8_t> data, const ModeConfig& cfg,
                         const SBoxTables& tables = standard_sbox()) {
  return xts_process(data, cfg, LastBlockMeta::for_length(data.size(), Mode::kXts), tables);
}

inline std::vector<Block128> to_blocks(std::span<const std::uint8_t> data) {
  if (data.size() % kBlockBytes != 0) throw DataError("input is not a multiple of 128 bits");
  std::vector<Block128> blocks;
  blocks.reserve(data.size() / kBlockBytes);
  for (std::size_t off = 0; off < data.size(); off += kBlockBytes) blocks.push_back(load_block(data, off));
  return blocks;
}

inline Bytes from_blocks(std::span<const Block128> blocks) {
  Bytes out;
  out.reserve(blocks.size() * kBlockBytes);
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Whole-buffer dispatch. GCM output carries the tag as 16 trailing octets in
// the encrypt direction.
inline Bytes process_buffer(std::span<const std::uint8_t> data, const ModeConfig& cfg,
                            const SBoxTables& tables = standard_sbox()) {
  switch (cfg.mode) {
    case Mode::kEcb: return from_blocks(ecb_process(to_blocks(data), cfg, tables));
    case Mode::kCbc: return from_blocks(cbc_process(to_blocks(data), cfg, tables));
    case Mode::kCtr: return ctr_process(data, cfg, tables);
    case Mode::kXts: return xts_process(data, cfg, tables);
    case Mode::kGcm: {
      GcmResult r = gcm_process(data, cfg, tables);
      if (cfg.direction == Direction::kEncrypt) r.data.insert(r.data.end(), r.tag.begin(), r.tag.end());
      return r.data;
    }
  }
  throw ConfigError("unknown mode");
}

// The 64-bit 3DES datapath processes blocks independently.
inline Bytes tdes_process(std::span<const std::uint8_t> data, const TripleDes& cipher, Direction dir) {
  if (data.size() % kTdesBlockBytes != 0) throw DataError("3DES input is not a multiple of 64 bits");
  Bytes out;
  out.reserve(data.size());
  for (std::size_t off = 0; off < data.size(); off += kTdesBlockBytes) {
    const Block64 r = cipher.process(load_block64(data, off), dir);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace dualcore

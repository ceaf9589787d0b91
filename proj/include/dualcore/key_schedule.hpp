// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

// AES key expansion, batch and streaming.
//
// The streaming form models the key expansion sub-module cycle by cycle: the
// generator works in Nk-word chunks (128/192/256 bits) while the output stage
// emits exactly one 128-bit round key per clock. For 192-bit keys a MOD3
// counter sequences the output multiplexer:
//
//   group cycle 1: emit the top 128 bits of the chunk in Reg2, park its low
//                  64 bits in Reg3, generate the next chunk into Reg2.
//   group cycle 2: emit Reg3 || top 64 bits of Reg2, park the low 128 bits of
//                  Reg2 in Reg3. The generator input (Reg0) is held.
//   group cycle 3: emit Reg3 and generate the next chunk.
//
// 128- and 256-bit keys are multiples of the output width, so their streams
// degenerate to direct emission (256-bit keys alternate top/bottom halves).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualcore/bytes.hpp"
#include "dualcore/sbox.hpp"

namespace dualcore {

// Encodings follow the Ks[1:0] port field.
enum class KeySize : std::uint8_t { k128 = 0, k192 = 1, k256 = 2 };

constexpr int key_bits(KeySize ks) { return 128 + 64 * static_cast<int>(ks); }
constexpr int key_bytes(KeySize ks) { return key_bits(ks) / 8; }
constexpr int key_words(KeySize ks) { return key_bits(ks) / 32; }
constexpr int num_rounds(KeySize ks) { return key_words(ks) + 6; }

inline std::optional<KeySize> decode_key_size(std::uint8_t code) {
  if (code > 2) return std::nullopt;
  return static_cast<KeySize>(code);
}

constexpr std::uint8_t encode_key_size(KeySize ks) { return static_cast<std::uint8_t>(ks); }

inline KeySize key_size_from_bits(int bits) {
  switch (bits) {
    case 128: return KeySize::k128;
    case 192: return KeySize::k192;
    case 256: return KeySize::k256;
    default: throw ConfigError("AES key size must be 128, 192 or 256 bits, got " + std::to_string(bits));
  }
}

struct RoundKey {
  Block128 bytes{};

  std::uint32_t word(int i) const {
    const auto base = static_cast<std::size_t>(4 * i);
    return (std::uint32_t{bytes[base]} << 24) | (std::uint32_t{bytes[base + 1]} << 16) |
           (std::uint32_t{bytes[base + 2]} << 8) | std::uint32_t{bytes[base + 3]};
  }

  static RoundKey from_words(std::span<const std::uint32_t, 4> w) {
    RoundKey rk;
    for (std::size_t i = 0; i < 4; ++i) {
      rk.bytes[4 * i] = static_cast<std::uint8_t>(w[i] >> 24);
      rk.bytes[4 * i + 1] = static_cast<std::uint8_t>(w[i] >> 16);
      rk.bytes[4 * i + 2] = static_cast<std::uint8_t>(w[i] >> 8);
      rk.bytes[4 * i + 3] = static_cast<std::uint8_t>(w[i]);
    }
    return rk;
  }

  friend bool operator==(const RoundKey&, const RoundKey&) = default;
};

class AesKey {
 public:
  // All-zero 128-bit key.
  AesKey() : size_(KeySize::k128) {}

  AesKey(KeySize size, std::span<const std::uint8_t> material) : size_(size) {
    if (material.size() != static_cast<std::size_t>(key_bytes(size))) {
      throw ConfigError("AES-" + std::to_string(key_bits(size)) + " key needs " +
                        std::to_string(key_bytes(size)) + " octets, got " + std::to_string(material.size()));
    }
    std::copy(material.begin(), material.end(), bytes_.begin());
  }

  // Size is inferred from the hex length (32, 48 or 64 digits).
  static AesKey from_hex(std::string_view hex) {
    const Bytes raw = parse_hex(hex);
    return AesKey(key_size_from_bits(static_cast<int>(raw.size() * 8)), raw);
  }

  // K1[255:0]/K2[255:0] packing: a 128-bit key occupies [255:128], a 192-bit
  // key [255:64].
  static AesKey from_bus(const Word256& bus, KeySize size) {
    return AesKey(size, std::span<const std::uint8_t>(bus.data(), static_cast<std::size_t>(key_bytes(size))));
  }

  Word256 to_bus() const { return bytes_; }
  KeySize size() const { return size_; }
  std::span<const std::uint8_t> material() const {
    return {bytes_.data(), static_cast<std::size_t>(key_bytes(size_))};
  }

  friend bool operator==(const AesKey&, const AesKey&) = default;

 private:
  KeySize size_;
  Word256 bytes_{};
};

class KeySchedule {
 public:
  KeySchedule(KeySize size, std::vector<RoundKey> round_keys) : size_(size), round_keys_(std::move(round_keys)) {
    if (round_keys_.size() != static_cast<std::size_t>(num_rounds(size_) + 1)) {
      throw ConfigError("key schedule needs " + std::to_string(num_rounds(size_) + 1) + " round keys");
    }
  }

  KeySize key_size() const { return size_; }
  int rounds() const { return num_rounds(size_); }
  const RoundKey& operator[](int i) const { return round_keys_[static_cast<std::size_t>(i)]; }
  const std::vector<RoundKey>& round_keys() const { return round_keys_; }

  friend bool operator==(const KeySchedule&, const KeySchedule&) = default;

 private:
  KeySize size_;
  std::vector<RoundKey> round_keys_;
};

namespace detail {

inline std::uint32_t sub_word(std::uint32_t w, const SBoxTables& t) {
  return (std::uint32_t{t.forward[w >> 24]} << 24) | (std::uint32_t{t.forward[(w >> 16) & 0xff]} << 16) |
         (std::uint32_t{t.forward[(w >> 8) & 0xff]} << 8) | std::uint32_t{t.forward[w & 0xff]};
}

constexpr std::uint32_t rot_word(std::uint32_t w) { return (w << 8) | (w >> 24); }

inline std::vector<std::uint32_t> key_material_words(const AesKey& key) {
  std::vector<std::uint32_t> w;
  const auto m = key.material();
  for (std::size_t i = 0; i < m.size(); i += 4) {
    w.push_back((std::uint32_t{m[i]} << 24) | (std::uint32_t{m[i + 1]} << 16) | (std::uint32_t{m[i + 2]} << 8) |
                std::uint32_t{m[i + 3]});
  }
  return w;
}

inline std::vector<std::uint32_t> schedule_words(const KeySchedule& ks) {
  std::vector<std::uint32_t> w;
  for (const auto& rk : ks.round_keys()) {
    for (int i = 0; i < 4; ++i) w.push_back(rk.word(i));
  }
  return w;
}

}  // namespace detail

// Word-at-a-time expansion as in the AES standard.
inline KeySchedule expand_key(const AesKey& key, const SBoxTables& tables = standard_sbox()) {
  const int nk = key_words(key.size());
  const int total = 4 * (num_rounds(key.size()) + 1);
  std::vector<std::uint32_t> w = detail::key_material_words(key);
  for (int i = nk; i < total; ++i) {
    std::uint32_t temp = w[static_cast<std::size_t>(i - 1)];
    if (i % nk == 0) {
      temp = detail::sub_word(detail::rot_word(temp), tables) ^
             (std::uint32_t{round_constant(static_cast<unsigned>(i / nk))} << 24);
    } else if (nk > 6 && i % nk == 4) {
      temp = detail::sub_word(temp, tables);
    }
    w.push_back(w[static_cast<std::size_t>(i - nk)] ^ temp);
  }
  std::vector<RoundKey> rks;
  for (int r = 0; r < total / 4; ++r) {
    rks.push_back(RoundKey::from_words(std::span<const std::uint32_t, 4>(w.data() + 4 * r, 4)));
  }
  return KeySchedule(key.size(), std::move(rks));
}

// One Nk-word unit of expanded key material.
struct KeyChunk {
  std::array<std::uint32_t, 8> words{};
  int count = 0;

  friend bool operator==(const KeyChunk&, const KeyChunk&) = default;
};

// One invocation of the key expansion logic: chunk `index` from chunk index-1.
inline KeyChunk generate_key_chunk(const KeyChunk& prev, unsigned index, const SBoxTables& tables = standard_sbox()) {
  KeyChunk next;
  next.count = prev.count;
  const auto nk = static_cast<std::size_t>(prev.count);
  next.words[0] = prev.words[0] ^ detail::sub_word(detail::rot_word(prev.words[nk - 1]), tables) ^
                  (std::uint32_t{round_constant(index)} << 24);
  for (std::size_t j = 1; j < nk; ++j) {
    std::uint32_t temp = next.words[j - 1];
    if (nk == 8 && j == 4) temp = detail::sub_word(temp, tables);
    next.words[j] = prev.words[j] ^ temp;
  }
  return next;
}

class StreamExhausted : public std::logic_error {
 public:
  StreamExhausted() : std::logic_error("key stream exhausted: all round keys already emitted") {}
};

// Register-level state of the streaming key expansion. One stream_next call is
// one clock.
struct KeyStreamState {
  KeySize key_size = KeySize::k128;
  // MOD3 count (MOD2 for 256-bit keys, always 0 for 128-bit keys). For 192-bit
  // keys: 0 on group cycle 1, 1 on the halt cycle, 2 on the resume cycle.
  int phase = 0;
  KeyChunk reg0;  // generator input
  KeyChunk reg2;  // latest generated chunk
  std::array<std::uint32_t, 4> reg3{};  // holdover words
  int reg3_words = 0;
  int emitted_count = 0;
  int generator_calls = 0;
  unsigned next_chunk_index = 1;
  bool generated_last_cycle = false;
  const SBoxTables* tables = &standard_sbox();

  int total_emissions() const { return num_rounds(key_size) + 1; }
  bool exhausted() const { return emitted_count >= total_emissions(); }
};

// Cycle 0: the key is loaded into the expansion logic and latched as the first
// chunk. No emission happens on this cycle.
inline KeyStreamState stream_init(const AesKey& key, const SBoxTables& tables = standard_sbox()) {
  KeyStreamState st;
  st.key_size = key.size();
  st.tables = &tables;
  const auto words = detail::key_material_words(key);
  st.reg2.count = static_cast<int>(words.size());
  std::copy(words.begin(), words.end(), st.reg2.words.begin());
  st.reg0 = st.reg2;
  return st;
}

namespace detail {

inline void stream_generate(KeyStreamState& st) {
  st.reg0 = st.reg2;
  st.reg2 = generate_key_chunk(st.reg0, st.next_chunk_index++, *st.tables);
  ++st.generator_calls;
  st.generated_last_cycle = true;
}

}  // namespace detail

inline RoundKey stream_next(KeyStreamState& st) {
  if (st.exhausted()) throw StreamExhausted();
  std::array<std::uint32_t, 4> out{};
  st.generated_last_cycle = false;
  const auto& c = st.reg2.words;

  switch (st.key_size) {
    case KeySize::k128:
      out = {c[0], c[1], c[2], c[3]};
      detail::stream_generate(st);
      break;

    case KeySize::k256:
      if (st.phase == 0) {
        out = {c[0], c[1], c[2], c[3]};
        st.reg3 = {c[4], c[5], c[6], c[7]};
        st.reg3_words = 4;
        detail::stream_generate(st);
      } else {
        out = st.reg3;
        st.reg3_words = 0;
      }
      st.phase = (st.phase + 1) % 2;
      break;

    case KeySize::k192:
      if (st.phase == 0) {
        out = {c[0], c[1], c[2], c[3]};
        st.reg3 = {c[4], c[5], 0, 0};
        st.reg3_words = 2;
        detail::stream_generate(st);
      } else if (st.phase == 1) {
        out = {st.reg3[0], st.reg3[1], c[0], c[1]};
        st.reg3 = {c[2], c[3], c[4], c[5]};
        st.reg3_words = 4;
      } else {
        out = st.reg3;
        st.reg3_words = 0;
        detail::stream_generate(st);
      }
      st.phase = (st.phase + 1) % 3;
      break;
  }
  ++st.emitted_count;
  return RoundKey::from_words(out);
}

// Runs a stream to completion; the port model spends one cycle per call.
inline KeySchedule drain_key_stream(KeyStreamState& st) {
  std::vector<RoundKey> rks;
  while (!st.exhausted()) rks.push_back(stream_next(st));
  return KeySchedule(st.key_size, std::move(rks));
}

// FK[255:0]: the last Nk words of the expanded key, packed from bit 255 down.
struct FinalKey {
  Word256 bus{};
  friend bool operator==(const FinalKey&, const FinalKey&) = default;
};

inline FinalKey final_round_key(const KeySchedule& ks) {
  const auto words = detail::schedule_words(ks);
  const auto nk = static_cast<std::size_t>(key_words(ks.key_size()));
  FinalKey fk;
  for (std::size_t i = 0; i < nk; ++i) {
    const std::uint32_t w = words[words.size() - nk + i];
    fk.bus[4 * i] = static_cast<std::uint8_t>(w >> 24);
    fk.bus[4 * i + 1] = static_cast<std::uint8_t>(w >> 16);
    fk.bus[4 * i + 2] = static_cast<std::uint8_t>(w >> 8);
    fk.bus[4 * i + 3] = static_cast<std::uint8_t>(w);
  }
  return fk;
}

}  // namespace dualcore

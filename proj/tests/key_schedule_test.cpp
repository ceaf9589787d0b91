// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcore/key_schedule.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace dualcore {
namespace {

using testing::kAllKeySizes;
using testing::random_key;
using testing::Rng;

TEST(ExpandKeyTest, StandardExampleSecondRoundKey) {
  const KeySchedule ks = expand_key(AesKey::from_hex("000102030405060708090a0b0c0d0e0f"));
  EXPECT_EQ(ks[1].word(0), 0xd6aa74fdu);
  EXPECT_EQ(to_hex(ks[1].bytes), "d6aa74fdd2af72fadaa678f1d6ab76fe");
  EXPECT_EQ(to_hex(ks[10].bytes), "13111d7fe3944a17f307a78b4d2b30c5");
}

TEST(ExpandKeyTest, RoundKeyCounts) {
  Rng rng(10);
  EXPECT_EQ(expand_key(random_key(rng, KeySize::k128)).round_keys().size(), 11u);
  EXPECT_EQ(expand_key(random_key(rng, KeySize::k192)).round_keys().size(), 13u);
  EXPECT_EQ(expand_key(random_key(rng, KeySize::k256)).round_keys().size(), 15u);
}

TEST(ExpandKeyTest, ZeroKeyStartsWithKey) {
  const Bytes zero(16, 0);
  const KeySchedule ks = expand_key(AesKey(KeySize::k128, zero));
  EXPECT_EQ(ks[0], RoundKey{});
  EXPECT_EQ(to_hex(ks[1].bytes), "62636363626363636263636362636363");
}

TEST(ExpandKeyTest, Deterministic) {
  Rng rng(11);
  for (KeySize size : kAllKeySizes) {
    const AesKey key = random_key(rng, size);
    EXPECT_EQ(expand_key(key), expand_key(key));
  }
}

TEST(AesKeyTest, BusPacking) {
  Word256 bus{};
  for (std::size_t i = 0; i < bus.size(); ++i) bus[i] = static_cast<std::uint8_t>(i);
  const AesKey k128 = AesKey::from_bus(bus, KeySize::k128);
  EXPECT_EQ(to_hex(k128.material()), "000102030405060708090a0b0c0d0e0f");
  const AesKey k192 = AesKey::from_bus(bus, KeySize::k192);
  EXPECT_EQ(k192.material().size(), 24u);
  EXPECT_EQ(k192.material().back(), 23);
  Word256 expect{};
  for (std::size_t i = 0; i < 16; ++i) expect[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(k128.to_bus(), expect);
}

TEST(AesKeyTest, RejectsWrongLength) {
  EXPECT_THROW(AesKey(KeySize::k192, Bytes(16)), ConfigError);
  EXPECT_THROW(AesKey::from_hex("0011"), ConfigError);
  EXPECT_THROW(AesKey::from_hex("0g"), ConfigError);
}

TEST(KeySizeTest, Encoding) {
  EXPECT_EQ(decode_key_size(0), KeySize::k128);
  EXPECT_EQ(decode_key_size(2), KeySize::k256);
  EXPECT_FALSE(decode_key_size(3).has_value());
  EXPECT_EQ(num_rounds(KeySize::k192), 12);
}

TEST(KeyChunkTest, GeneratorMatchesBatchWords) {
  Rng rng(12);
  for (KeySize size : kAllKeySizes) {
    const AesKey key = random_key(rng, size);
    const auto words = detail::schedule_words(expand_key(key));
    const auto nk = static_cast<std::size_t>(key_words(size));
    KeyStreamState st = stream_init(key);
    KeyChunk chunk = st.reg2;
    for (unsigned i = 1; i * nk < words.size(); ++i) {
      chunk = generate_key_chunk(chunk, i);
      for (std::size_t j = 0; j < nk && i * nk + j < words.size(); ++j) {
        ASSERT_EQ(chunk.words[j], words[i * nk + j]);
      }
    }
  }
}

TEST(KeyStreamTest, InitLatchesKeyWithoutEmitting) {
  const AesKey key = AesKey::from_hex("000102030405060708090a0b0c0d0e0f1011121314151617");
  const KeyStreamState st = stream_init(key);
  EXPECT_EQ(st.emitted_count, 0);
  EXPECT_EQ(st.phase, 0);
  EXPECT_EQ(st.reg2.count, 6);
  EXPECT_EQ(st.reg2.words[0], 0x00010203u);
  EXPECT_EQ(st.reg2.words[5], 0x14151617u);
}

TEST(KeyStreamTest, Key128FirstEmissionIsKey) {
  const AesKey key = AesKey::from_hex("2b7e151628aed2a6abf7158809cf4f3c");
  KeyStreamState st = stream_init(key);
  EXPECT_EQ(stream_next(st), expand_key(key)[0]);
}

TEST(KeyStreamTest, StreamEqualsBatchForAllSizes) {
  Rng rng(13);
  for (KeySize size : kAllKeySizes) {
    for (int trial = 0; trial < 1000; ++trial) {
      const AesKey key = random_key(rng, size);
      KeyStreamState st = stream_init(key);
      ASSERT_EQ(drain_key_stream(st), expand_key(key));
    }
  }
}

TEST(KeyStreamTest, Key192PhaseDiscipline) {
  Rng rng(14);
  const AesKey key = random_key(rng, KeySize::k192);
  const KeySchedule batch = expand_key(key);
  KeyStreamState st = stream_init(key);
  int emitted = 0;
  while (!st.exhausted()) {
    const int phase = st.phase;
    const RoundKey rk = stream_next(st);
    EXPECT_EQ(rk, batch[emitted]) << "emission " << emitted;
    EXPECT_EQ(st.generated_last_cycle, phase != 1) << "phase " << phase;
    EXPECT_EQ(st.phase, (phase + 1) % 3);
    ++emitted;
  }
  EXPECT_EQ(emitted, 13);
  EXPECT_EQ(st.generator_calls, 9);
}

TEST(KeyStreamTest, Key192HoldoverRegister) {
  const AesKey key = AesKey::from_hex("8e73b0f7da0e6452c810f32b809079e562f8ead2522c6b7b");
  KeyStreamState st = stream_init(key);
  stream_next(st);
  EXPECT_EQ(st.reg3_words, 2);
  EXPECT_EQ(st.reg3[0], 0x62f8ead2u);
  EXPECT_EQ(st.reg3[1], 0x522c6b7bu);
  stream_next(st);
  EXPECT_EQ(st.reg3_words, 4);
  // Reg0 holds the generator input that produced Reg2.
  EXPECT_EQ(st.reg0.words[0], 0x8e73b0f7u);
}

TEST(KeyStreamTest, Key256AlternatesHalves) {
  Rng rng(15);
  const AesKey key = random_key(rng, KeySize::k256);
  KeyStreamState st = stream_init(key);
  const RoundKey first = stream_next(st);
  const RoundKey second = stream_next(st);
  EXPECT_EQ(to_hex(first.bytes), to_hex(key.material().subspan(0, 16)));
  EXPECT_EQ(to_hex(second.bytes), to_hex(key.material().subspan(16, 16)));
  EXPECT_EQ(st.generator_calls, 1);
}

TEST(KeyStreamTest, EmissionCountAndExhaustion) {
  Rng rng(16);
  for (KeySize size : kAllKeySizes) {
    KeyStreamState st = stream_init(random_key(rng, size));
    int n = 0;
    while (!st.exhausted()) {
      stream_next(st);
      ++n;
    }
    EXPECT_EQ(n, num_rounds(size) + 1);
    EXPECT_THROW(stream_next(st), StreamExhausted);
  }
}

TEST(FinalKeyTest, Key128ZeroKey) {
  const KeySchedule ks = expand_key(AesKey(KeySize::k128, Bytes(16, 0)));
  const FinalKey fk = final_round_key(ks);
  EXPECT_EQ(to_hex(std::span<const std::uint8_t>(fk.bus).subspan(0, 16)), to_hex(ks[10].bytes));
  EXPECT_EQ(to_hex(std::span<const std::uint8_t>(fk.bus).subspan(16)), std::string(32, '0'));
  EXPECT_EQ(to_hex(ks[10].bytes), "b4ef5bcb3e92e21123e951cf6f8f188e");
}

TEST(FinalKeyTest, PackingPerKeySize) {
  Rng rng(17);
  const KeySchedule ks192 = expand_key(random_key(rng, KeySize::k192));
  const auto words = detail::schedule_words(ks192);
  const FinalKey fk192 = final_round_key(ks192);
  EXPECT_EQ(fk192.bus[0], words[46] >> 24);
  for (std::size_t i = 24; i < 32; ++i) EXPECT_EQ(fk192.bus[i], 0);

  const KeySchedule ks256 = expand_key(random_key(rng, KeySize::k256));
  const FinalKey fk256 = final_round_key(ks256);
  EXPECT_EQ(to_hex(std::span<const std::uint8_t>(fk256.bus).subspan(0, 16)), to_hex(ks256[13].bytes));
  EXPECT_EQ(to_hex(std::span<const std::uint8_t>(fk256.bus).subspan(16)), to_hex(ks256[14].bytes));
}

}  // namespace
}  // namespace dualcore

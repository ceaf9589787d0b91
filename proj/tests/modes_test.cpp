// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcore/modes.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace dualcore {
namespace {

using testing::block_hex;
using testing::kAllKeySizes;
using testing::random_block;
using testing::random_bytes;
using testing::random_key;
using testing::Rng;

// Multi-block expected values are frozen from the OpenSSL oracle
// (tools/gen_kat_corpus.py); the first three are the SP 800-38A samples.
constexpr const char* kSampleKey = "2b7e151628aed2a6abf7158809cf4f3c";
constexpr const char* kSamplePlain =
    "6bc1bee22e409f96e93d7e117393172aae2d8a571e03ac9c9eb76fac45af8e51"
    "30c81c46a35ce411e5fbc1191a0a52eff69f2445df4f9b17ad2b417be66c3710";

ModeConfig make_cfg(Mode m, const AesKey& key, Direction dir = Direction::kEncrypt) {
  ModeConfig cfg;
  cfg.mode = m;
  cfg.direction = dir;
  cfg.key1 = key;
  return cfg;
}

TEST(EcbTest, SampleVector) {
  const ModeConfig cfg = make_cfg(Mode::kEcb, AesKey::from_hex(kSampleKey));
  EXPECT_EQ(to_hex(process_buffer(parse_hex(kSamplePlain), cfg)),
            "3ad77bb40d7a3660a89ecaf32466ef97f5d3d58503b9699de785895a96fdbaaf"
            "43b1cd7f598ece23881b00e3ed0306887b0c785e27e8ad3f8223207104725dd4");
}

TEST(EcbTest, SingleBlockIsRawCipherAndDuplicatesRepeat) {
  Rng rng(40);
  const AesKey key = random_key(rng, KeySize::k192);
  const ModeConfig cfg = make_cfg(Mode::kEcb, key);
  const Block128 b = random_block(rng);
  const std::vector<Block128> in{b, b};
  const auto out = ecb_process(in, cfg);
  EXPECT_EQ(out[0], aes_encrypt_block(b, expand_key(key)));
  EXPECT_EQ(out[0], out[1]);
}

TEST(CbcTest, SampleVector) {
  ModeConfig cfg = make_cfg(Mode::kCbc, AesKey::from_hex(kSampleKey));
  cfg.iv = block_hex("000102030405060708090a0b0c0d0e0f");
  const std::string ct =
      "7649abac8119b246cee98e9b12e9197d5086cb9b507219ee95db113a917678b2"
      "73bed6b8e3c1743b7116e69e222295163ff1caa1681fac09120eca307586e1a7";
  EXPECT_EQ(to_hex(process_buffer(parse_hex(kSamplePlain), cfg)), ct);
  cfg.direction = Direction::kDecrypt;
  EXPECT_EQ(to_hex(process_buffer(parse_hex(ct), cfg)), kSamplePlain);
}

TEST(CbcTest, ZeroIvSingleBlockEqualsEcb) {
  Rng rng(41);
  const AesKey key = random_key(rng, KeySize::k128);
  const std::vector<Block128> in{random_block(rng)};
  EXPECT_EQ(cbc_process(in, make_cfg(Mode::kCbc, key)), ecb_process(in, make_cfg(Mode::kEcb, key)));
}

TEST(CbcTest, BitFlipCorruptsExactlyTwoBlocks) {
  Rng rng(42);
  ModeConfig cfg = make_cfg(Mode::kCbc, random_key(rng, KeySize::k256));
  cfg.iv = random_block(rng);
  std::vector<Block128> pt;
  for (int i = 0; i < 6; ++i) pt.push_back(random_block(rng));
  auto ct = cbc_process(pt, cfg);
  ct[2][5] ^= 0x10;
  cfg.direction = Direction::kDecrypt;
  const auto back = cbc_process(ct, cfg);
  for (std::size_t i = 0; i < pt.size(); ++i) {
    EXPECT_EQ(back[i] != pt[i], i == 2 || i == 3) << "block " << i;
  }
  EXPECT_EQ(xor_blocks(back[3], pt[3])[5], 0x10);
}

TEST(CtrTest, SampleVector) {
  ModeConfig cfg = make_cfg(Mode::kCtr, AesKey::from_hex(kSampleKey));
  cfg.iv = block_hex("f0f1f2f3f4f5f6f7f8f9fafbfcfdfeff");
  EXPECT_EQ(to_hex(ctr_process(parse_hex(kSamplePlain), cfg)),
            "874d6191b620e3261bef6864990db6ce9806f66b7970fdff8617187bb9fffdff"
            "5ae4df3edbd5d35e5b4f09020db03eab1e031dda2fbe03d1792170a0f3009cee");
}

TEST(CtrTest, PartialTailVector) {
  ModeConfig cfg = make_cfg(Mode::kCtr, AesKey::from_hex("0fc73268ac639e31e1788d3ed7cc8397"));
  cfg.iv = block_hex("cd31bc334a5dfb6c266fcffc04a37f32");
  const Bytes in = parse_hex("be712989a9dfb7501f996e9f6073cad1cdc8bbc30376278c51982b05dc6c41db27d4a5a89573");
  EXPECT_EQ(to_hex(ctr_process(in, cfg)), "88dad5e8e11b0b9dcf1e07752c9b545a85743d1f3cdcc200dd37b4b997545645ab85ef22e5ea");
}

TEST(CtrTest, Involution) {
  Rng rng(43);
  ModeConfig cfg = make_cfg(Mode::kCtr, random_key(rng, KeySize::k128));
  cfg.iv = random_block(rng);
  const Bytes data = random_bytes(rng, 77);
  EXPECT_EQ(ctr_process(ctr_process(data, cfg), cfg), data);
}

TEST(CtrTest, BeSelectsLastBlockLength) {
  Rng rng(44);
  const ModeConfig cfg = make_cfg(Mode::kCtr, random_key(rng, KeySize::k128));
  const Bytes data = random_bytes(rng, 20);
  LastBlockMeta meta;
  meta.endc = true;
  meta.be = 3;
  const Bytes out = ctr_process(data, cfg, meta);
  EXPECT_EQ(out.size(), 20u);
  EXPECT_EQ(LastBlockMeta::for_length(20, Mode::kCtr).be, 3);
  meta.be = 5;
  EXPECT_THROW(ctr_process(data, cfg, meta), DataError);
  meta.endc = false;
  EXPECT_THROW(ctr_process(data, cfg, meta), DataError);
}

TEST(CtrTest, CounterWrapsLowWordOnly) {
  Block128 c = block_hex("000000000000000000000001ffffffff");
  EXPECT_EQ(to_hex(inc32(c)), "00000000000000000000000100000000");
  c = block_hex("0000000000000000000000000000000f");
  EXPECT_EQ(to_hex(inc32(c)), "00000000000000000000000000000010");
}

TEST(GcmTest, ZeroKeyVectors) {
  ModeConfig cfg = make_cfg(Mode::kGcm, AesKey(KeySize::k128, Bytes(16, 0)));
  cfg.iv = gcm_j0_from_nonce(Bytes(12, 0));
  const GcmResult empty = gcm_process({}, cfg);
  EXPECT_TRUE(empty.data.empty());
  EXPECT_EQ(to_hex(empty.tag), "58e2fccefa7e3061367f1d57a4e7455a");
  const GcmResult one = gcm_process(Bytes(16, 0), cfg);
  EXPECT_EQ(to_hex(one.data), "0388dace60b6a392f328c2b971b2fe78");
  EXPECT_EQ(to_hex(one.tag), "ab6e47d42cec13bdf53a67b21257bddf");
}

TEST(GcmTest, FourBlockVector) {
  ModeConfig cfg = make_cfg(Mode::kGcm, AesKey::from_hex("feffe9928665731c6d6a8f9467308308"));
  cfg.iv = block_hex("cafebabefacedbaddecaf88800000001");
  const GcmResult r = gcm_process(parse_hex("d9313225f88406e5a55909c5aff5269a86a7a9531534f7da2e4c303d8a318a72"
                                            "1c3c0c95956809532fcf0e2449a6b525b16aedf5aa0de657ba637b391aafd255"),
                                  cfg);
  EXPECT_EQ(to_hex(r.data),
            "42831ec2217774244b7221b784d0d49ce3aa212f2c02a4e035c17e2329aca12e"
            "21d514b25466931c7d8f6a5aac84aa051ba30b396a0aac973d58e091473f5985");
  EXPECT_EQ(to_hex(r.tag), "4d5c2af327cd64a62cf35abd2ba6fab4");
}

TEST(GcmTest, CiphertextIsCtrFromIncrementedCounter) {
  Rng rng(45);
  for (KeySize ks : kAllKeySizes) {
    const AesKey key = random_key(rng, ks);
    ModeConfig gcm = make_cfg(Mode::kGcm, key);
    gcm.iv = random_block(rng);
    ModeConfig ctr = make_cfg(Mode::kCtr, key);
    ctr.iv = inc32(gcm.iv);
    const Bytes data = random_bytes(rng, 16 * 5 + 9);
    const Bytes g = gcm_process(data, gcm).data;
    const Bytes c = ctr_process(data, ctr);
    for (std::size_t off = 0; off < data.size(); off += kBlockBytes) {
      ASSERT_EQ(load_block(g, off), load_block(c, off)) << off;
    }
  }
}

TEST(GcmTest, TamperedCiphertextFailsVerification) {
  Rng rng(46);
  ModeConfig cfg = make_cfg(Mode::kGcm, random_key(rng, KeySize::k256));
  cfg.iv = random_block(rng);
  const Bytes pt = random_bytes(rng, 40);
  const GcmResult enc = gcm_process(pt, cfg);
  EXPECT_EQ(gcm_decrypt_verified(enc.data, enc.tag, cfg), pt);
  for (std::size_t bit = 0; bit < enc.data.size() * 8; bit += 13) {
    Bytes bad = enc.data;
    bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    ASSERT_FALSE(gcm_decrypt_verified(bad, enc.tag, cfg).has_value()) << bit;
  }
  Block128 bad_tag = enc.tag;
  bad_tag[0] ^= 1;
  EXPECT_FALSE(gcm_decrypt_verified(enc.data, bad_tag, cfg).has_value());
}

ModeConfig xts_cfg(const char* k1, const char* k2, const char* iv, Direction dir = Direction::kEncrypt) {
  ModeConfig cfg = make_cfg(Mode::kXts, AesKey::from_hex(k1), dir);
  cfg.key2 = AesKey::from_hex(k2);
  cfg.iv = block_hex(iv);
  return cfg;
}

TEST(XtsTest, KnownVectors) {
  EXPECT_EQ(to_hex(xts_process(parse_hex("1fe3d4f524caab4d7c8ec9fa43e301fe"),
                               xts_cfg("db3876f5359a99a0c3231fc39b1304d4", "81aca8d5271ad321b6bcc2d78df87f61",
                                       "4caac3398a372f709deb1b084d04f210"))),
            "184e185ceb6d0598acced59c22b39dc2");
  const ModeConfig steal = xts_cfg("065a10dd776d67aae5cb21a5f1d24f34", "42c6fc34e4e0a36c08e7df36ee69cdbc",
                                   "235e9828059dcc68bd65b9750d7c188a");
  EXPECT_EQ(to_hex(xts_process(parse_hex("c7eca69ac0c6e72a2b050a16254d697ffb"), steal)),
            "35684ed71c015829ee0971e60e6b5b21f2");
  ModeConfig back = steal;
  back.direction = Direction::kDecrypt;
  EXPECT_EQ(to_hex(xts_process(parse_hex("35684ed71c015829ee0971e60e6b5b21f2"), back)),
            "c7eca69ac0c6e72a2b050a16254d697ffb");
}

TEST(XtsTest, AlignedUnitUsesIndependentTweakedBlocks) {
  Rng rng(47);
  ModeConfig cfg = make_cfg(Mode::kXts, random_key(rng, KeySize::k128));
  cfg.key2 = random_key(rng, KeySize::k128);
  cfg.iv = random_block(rng);
  const Bytes data = random_bytes(rng, 48);
  const Bytes out = xts_process(data, cfg);
  const Aes aes(cfg.key1);
  Block128 t = Aes(*cfg.key2).encrypt(cfg.iv);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(load_block(out, j * 16), xts_block(aes, load_block(data, j * 16), t, Direction::kEncrypt));
    t = xts_mul_alpha(t);
  }
}

TEST(XtsTest, TweakRecurrenceMatchesAlphaPowers) {
  Rng rng(48);
  Block128 alpha{};
  alpha[0] = 2;
  const Block128 t0 = random_block(rng);
  Block128 t = t0;
  Block128 power = gf128_one(Gf128Convention::kXts);
  for (int i = 0; i < 40; ++i) {
    ASSERT_EQ(t, gf128_mul(t0, power, Gf128Convention::kXts)) << i;
    t = xts_mul_alpha(t);
    power = gf128_mul(power, alpha, Gf128Convention::kXts);
  }
}

TEST(XtsTest, SeventeenOctetRoundTripAndShortUnitRejected) {
  Rng rng(49);
  ModeConfig cfg = make_cfg(Mode::kXts, random_key(rng, KeySize::k256));
  cfg.key2 = random_key(rng, KeySize::k256);
  cfg.iv = random_block(rng);
  const Bytes data = random_bytes(rng, 17);
  const Bytes ct = xts_process(data, cfg);
  EXPECT_EQ(ct.size(), 17u);
  ModeConfig dec = cfg;
  dec.direction = Direction::kDecrypt;
  EXPECT_EQ(xts_process(ct, dec), data);
  EXPECT_THROW(xts_process(random_bytes(rng, 15), cfg), DataError);
  LastBlockMeta meta = LastBlockMeta::for_length(17, Mode::kXts);
  meta.cts = false;
  EXPECT_THROW(xts_process(data, cfg, meta), DataError);
}

TEST(ModeConfigTest, KeyTwoOnlyForXts) {
  Rng rng(50);
  ModeConfig cfg = make_cfg(Mode::kXts, random_key(rng, KeySize::k128));
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.key2 = random_key(rng, KeySize::k256);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.mode = Mode::kEcb;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(ecb_process({}, make_cfg(Mode::kCbc, random_key(rng, KeySize::k128))), ConfigError);
}

TEST(ModeConfigTest, EncodingRoundTrip) {
  for (std::uint8_t code = 0; code < 8; ++code) {
    const auto m = decode_mode(code);
    if (code <= 4) {
      ASSERT_TRUE(m.has_value());
      EXPECT_EQ(encode_mode(*m), code);
      EXPECT_EQ(parse_mode_name(mode_name(*m)), m);
    } else {
      EXPECT_FALSE(m.has_value());
    }
  }
  EXPECT_EQ(encode_mode(Mode::kGcm), 0);
  EXPECT_EQ(encode_mode(Mode::kXts), 4);
}

TEST(BufferTest, UnalignedEcbRejected) {
  Rng rng(51);
  EXPECT_THROW(process_buffer(random_bytes(rng, 20), make_cfg(Mode::kEcb, random_key(rng, KeySize::k128))),
               DataError);
}

// Lengths include partial tails for the stream modes and the 17..31 octet
// stealing range for XTS.
std::size_t random_length(Rng& rng, Mode m, int trial) {
  switch (m) {
    case Mode::kEcb:
    case Mode::kCbc: return 16 * (1 + rng() % 6);
    case Mode::kXts: return trial % 4 == 0 ? 17 + rng() % 15 : 16 + rng() % 80;
    default: return rng() % 100;
  }
}

TEST(RoundTripTest, EveryModeAndKeySize) {
  Rng rng(52);
  for (Mode m : {Mode::kEcb, Mode::kCbc, Mode::kCtr, Mode::kGcm, Mode::kXts}) {
    for (KeySize ks : kAllKeySizes) {
      for (int trial = 0; trial < 1000; ++trial) {
        ModeConfig cfg = make_cfg(m, random_key(rng, ks));
        if (m == Mode::kXts) cfg.key2 = random_key(rng, ks);
        cfg.iv = random_block(rng);
        const Bytes data = random_bytes(rng, random_length(rng, m, trial));
        Bytes ct = process_buffer(data, cfg);
        ModeConfig dec = cfg;
        dec.direction = Direction::kDecrypt;
        if (m == Mode::kGcm) {
          const Block128 tag = load_block(ct, ct.size() - 16);
          ct.resize(ct.size() - 16);
          ASSERT_EQ(gcm_decrypt_verified(ct, tag, cfg), data);
        } else {
          ASSERT_EQ(process_buffer(ct, dec), data) << mode_name(m) << " trial " << trial;
        }
      }
    }
  }
}

TEST(TdesBufferTest, EcbOverBlocks) {
  Rng rng(53);
  const TripleDes cipher(testing::random_des_key(rng), testing::random_des_key(rng), testing::random_des_key(rng));
  const Bytes data = random_bytes(rng, 64);
  EXPECT_EQ(tdes_process(tdes_process(data, cipher, Direction::kEncrypt), cipher, Direction::kDecrypt), data);
  EXPECT_THROW(tdes_process(random_bytes(rng, 12), cipher, Direction::kEncrypt), DataError);
}

}  // namespace
}  // namespace dualcore

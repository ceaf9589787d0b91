// Copyright 2026 The dualcore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcore/stimulus.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_util.hpp"

namespace dualcore {
namespace {

using testing::Rng;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Stimulus, UnnamedSignalsHoldTheirValue) {
  const auto cycles = parse_aes_stimulus("start=1 mode=3 k1=ff\nrepeat=2\ncen=1 d=ab\n");
  ASSERT_EQ(cycles.size(), 4u);
  EXPECT_TRUE(cycles[0].start);
  EXPECT_TRUE(cycles[2].start);
  EXPECT_EQ(cycles[1].mode, 3);
  EXPECT_EQ(cycles[3].k1[31], 0xff);
  EXPECT_EQ(cycles[3].k1[30], 0x00);
  EXPECT_TRUE(cycles[3].cen);
  EXPECT_EQ(cycles[3].d[15], 0xab);
  // Defaults before any assignment.
  EXPECT_TRUE(cycles[0].reset_n);
  EXPECT_TRUE(cycles[0].encrypt);
  EXPECT_EQ(cycles[0].be, 15);
}

TEST(Stimulus, RepeatCountIsHex) {
  const auto cycles = parse_aes_stimulus("repeat=b\ncen=1 repeat=10\n");
  ASSERT_EQ(cycles.size(), 11u + 16u);
  EXPECT_FALSE(cycles[10].cen);
  EXPECT_TRUE(cycles[11].cen);
}

TEST(Stimulus, CommentsBlankLinesAndPrefixes) {
  const auto cycles = parse_aes_stimulus("# header\n\n  mode=0x4   # xts\n\t\nks=2\n");
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0].mode, 4);
  EXPECT_EQ(cycles[1].ks, 2);
  EXPECT_TRUE(parse_aes_stimulus("# nothing\n\n").empty());
  EXPECT_TRUE(parse_aes_stimulus("").empty());
}

TEST(Stimulus, WideValuesAreMaskedToTheSignal) {
  const auto cycles = parse_aes_stimulus("mode=ff be=1f ks=7 d=0102030405060708090a0b0c0d0e0f1011\n");
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].mode, 7);
  EXPECT_EQ(cycles[0].be, 15);
  EXPECT_EQ(cycles[0].ks, 3);
  EXPECT_EQ(cycles[0].d, testing::block_hex("02030405060708090a0b0c0d0e0f1011"));
}

TEST(Stimulus, ErrorsCarryLineNumbers) {
  try {
    parse_aes_stimulus("cen=1\n\nbogus=1\n");
    FAIL() << "expected an error";
  } catch (const StimulusError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  try {
    parse_aes_stimulus("cen=xyz\n");
    FAIL() << "expected an error";
  } catch (const StimulusError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse_aes_stimulus("cen\n"), StimulusError);
  EXPECT_THROW(parse_aes_stimulus("repeat=0\n"), StimulusError);
  EXPECT_THROW(parse_aes_stimulus("d=\n"), StimulusError);
  EXPECT_THROW(parse_tdes_stimulus("cen=1\n"), DataError);
}

TEST(Stimulus, FormatParseRoundTrip) {
  Rng rng(30);
  for (Mode mode : {Mode::kEcb, Mode::kGcm, Mode::kXts}) {
    ModeConfig cfg;
    cfg.mode = mode;
    cfg.key1 = testing::random_key(rng, KeySize::k256);
    if (mode == Mode::kXts) cfg.key2 = testing::random_key(rng, KeySize::k256);
    cfg.iv = testing::random_block(rng);
    StimulusOptions opt;
    opt.bubbles = {1, 0, 2};
    const auto stim = build_stimulus(AesTransaction::single(cfg, testing::random_bytes(rng, 61 - (mode == Mode::kEcb) * 13)), opt);
    const std::string text = format_aes_stimulus(stim);
    EXPECT_EQ(parse_aes_stimulus(text), stim);
    EXPECT_LT(std::count(text.begin(), text.end(), '\n'), static_cast<long>(stim.size()));
  }

  TdesTransaction t;
  t.k1 = testing::random_des_key(rng);
  t.k2 = testing::random_des_key(rng);
  t.k3 = testing::random_des_key(rng);
  t.data = testing::random_bytes(rng, 24);
  const auto tstim = build_tdes_stimulus(t);
  EXPECT_EQ(parse_tdes_stimulus(format_tdes_stimulus(tstim)), tstim);
}

TEST(Stimulus, OutputTraceListsEverySignal) {
  std::vector<PortOutputs> outs(2);
  outs[1].write = true;
  outs[1].q[15] = 0x5a;
  const std::string trace = format_aes_trace(outs);
  std::istringstream is(trace);
  std::string l0, l1;
  std::getline(is, l0);
  std::getline(is, l1);
  EXPECT_EQ(l0.rfind("cycle=0 read=0 q=", 0), 0u);
  EXPECT_NE(l1.find("q=0000000000000000000000000000005a write=1"), std::string::npos);
  EXPECT_NE(l1.find("done=0"), std::string::npos);

  std::vector<TdesPortOutputs> touts(1);
  touts[0].write_error = 5;
  EXPECT_NE(format_tdes_trace(touts).find("write_error=5"), std::string::npos);
}

TEST(Stimulus, CheckedInEcbStimulusReproducesTimeline) {
  const auto stim = parse_aes_stimulus(read_file(std::string(DUALCORE_DATA_DIR) + "/stimulus/aes_ecb_2blk.stim"));
  AesCore core;
  const auto r = run_transaction(core, stim);
  EXPECT_TRUE(r.diagnostics.empty());
  std::vector<std::size_t> writes, done;
  for (std::size_t c = 0; c < r.outputs.size(); ++c) {
    if (r.outputs[c].write) writes.push_back(c);
    if (r.outputs[c].done) done.push_back(c);
  }
  EXPECT_EQ(writes, (std::vector<std::size_t>{22, 27}));
  EXPECT_EQ(done, (std::vector<std::size_t>{28}));
  EXPECT_EQ(r.outputs[22].q, testing::block_hex("69c4e0d86a7b0430d8cdb78070b4c55a"));
}

TEST(Stimulus, CheckedInFilesParseAndComplete) {
  for (const char* name : {"aes_cbc_3blk.stim", "aes_gcm_tail.stim", "aes_xts_cts.stim"}) {
    const auto stim = parse_aes_stimulus(read_file(std::string(DUALCORE_DATA_DIR) + "/stimulus/" + name));
    AesCore core;
    const auto r = run_transaction(core, stim);
    EXPECT_TRUE(r.diagnostics.empty()) << name;
    std::size_t done = 0;
    for (const auto& o : r.outputs) done += o.done;
    EXPECT_EQ(done, 1u) << name;
  }
  const auto tstim = parse_tdes_stimulus(read_file(std::string(DUALCORE_DATA_DIR) + "/stimulus/tdes_2blk.stim"));
  TdesCore core;
  const auto r = run_transaction(core, tstim);
  std::size_t writes = 0;
  for (const auto& o : r.outputs) writes += o.write_enable;
  EXPECT_EQ(writes, 2u);
}

}  // namespace
}  // namespace dualcore
